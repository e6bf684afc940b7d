// Copyright 2026 The vrnote Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "vrnote/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "vrnote/error.hpp"

namespace vrnote {
namespace {

using nlohmann::json;

/// Binds JSON keys of one object to fields, rejecting unknown keys.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  Section& number(const std::string& key, double& field) {
    bind(key, [&field, this, key](const json& v) {
      if (!v.is_number()) fail(path_ + "." + key, "expected a number");
      field = v.get<double>();
    });
    return *this;
  }
  Section& integer(const std::string& key, int& field) {
    bind(key, [&field, this, key](const json& v) {
      if (!v.is_number_integer()) fail(path_ + "." + key, "expected an integer");
      field = v.get<int>();
    });
    return *this;
  }
  Section& boolean(const std::string& key, bool& field) {
    bind(key, [&field, this, key](const json& v) {
      if (!v.is_boolean()) fail(path_ + "." + key, "expected a boolean");
      field = v.get<bool>();
    });
    return *this;
  }
  Section& vec3(const std::string& key, Vec3& field) {
    bind(key, [&field, this, key](const json& v) {
      if (!v.is_array() || v.size() != 3) fail(path_ + "." + key, "expected 3 numbers");
      for (int i = 0; i < 3; ++i) {
        if (!v[i].is_number()) fail(path_ + "." + key, "expected 3 numbers");
        field(i) = v[i].get<double>();
      }
    });
    return *this;
  }
  Section& object(const std::string& key, const std::function<void(Section&)>& body) {
    bind(key, [&body, this, key](const json& v) {
      Section inner(v, path_ + "." + key);
      body(inner);
      inner.finish();
    });
    return *this;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!known_.count(it.key())) fail(path_ + "." + it.key(), "unknown key");
    }
  }

  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "config " + where + ": " + what);
  }

 private:
  void bind(const std::string& key, const std::function<void(const json&)>& set) {
    known_[key] = true;
    auto it = j_.find(key);
    if (it != j_.end()) set(*it);
  }

  const json& j_;
  std::string path_;
  std::map<std::string, bool> known_;
};

json vec3_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

}  // namespace

AppConfig config_from_json(const json& j) {
  AppConfig cfg;
  Section root(j, "$");
  root.object("sim", [&](Section& s) {
    s.number("hover_range_m", cfg.sim.hover_range)
        .number("tablet_noise_sigma_m", cfg.sim.tablet_noise_sigma)
        .number("splat_sigma_px", cfg.sim.splat_sigma_px)
        .integer("background_max", cfg.sim.background_max)
        .number("max_reflect_angle_deg", cfg.sim.max_reflect_angle_deg)
        .object("rig", [&](Section& r) {
          CameraIntrinsics& k = cfg.sim.rig.intrinsics;
          r.number("fx", k.fx).number("fy", k.fy).number("cx", k.cx).number("cy", k.cy)
              .integer("width", k.width).integer("height", k.height)
              .number("baseline_m", cfg.sim.rig.baseline);
        });
  });
  root.object("tracker", [&](Section& s) {
    TrackerConfig& t = cfg.tracker;
    s.integer("threshold", t.threshold)
        .number("min_disparity_px", t.min_disparity)
        .integer("min_points", t.min_points)
        .number("min_elongation", t.min_elongation)
        .number("axis_core_fraction", t.axis_core_fraction)
        .integer("coast_frames", t.coast_frames)
        .object("icp", [&](Section& i) {
          i.integer("max_iters", t.icp.max_iters)
              .number("tol_px", t.icp.tol_px)
              .number("epipolar_band_px", t.icp.epipolar_band_px);
        })
        .object("kalman", [&](Section& k) {
          KalmanConfig& c = t.kalman;
          k.number("process_sigma_pos_m", c.process_sigma_pos)
              .number("process_sigma_axis_deg", c.process_sigma_axis_deg)
              .number("measurement_sigma_pos_m", c.measurement_sigma_pos)
              .number("measurement_sigma_axis_deg", c.measurement_sigma_axis_deg)
              .number("initial_sigma_vel_mps", c.initial_sigma_vel)
              .number("reset_nis", c.reset_nis)
              .number("robust_nis", c.robust_nis)
              .number("frame_dt_s", c.frame_dt);
        });
  });
  root.object("blend", [&](Section& s) { s.integer("window_frames", cfg.blend.window_frames); });
  root.object("note", [&](Section& s) {
    NoteConfig& n = cfg.note;
    s.number("page_width_mm", n.page_width_mm)
        .number("page_height_mm", n.page_height_mm)
        .number("stroke_width_mm", n.stroke_width_mm)
        .number("marker_width_mm", n.marker_width_mm)
        .boolean("swipe_left_is_next", n.swipe_left_is_next)
        .object("slide", [&](Section& sl) {
          sl.vec3("center_m", n.slide.center)
              .vec3("u_axis", n.slide.u_axis)
              .vec3("v_axis", n.slide.v_axis)
              .number("width_m", n.slide.width)
              .number("height_m", n.slide.height);
        });
  });
  root.object("session", [&](Section& s) { s.number("default_duration_s", cfg.default_duration_s); });
  root.object("server", [&](Section& s) { s.integer("port", cfg.port); });
  root.finish();

  cfg.sim.rig.validate();
  cfg.blend.validate();
  cfg.note.validate();
  if (!(cfg.default_duration_s >= 0.0)) Section::fail("$.session.default_duration_s", "must be >= 0");
  if (cfg.port < 0 || cfg.port > 65535) Section::fail("$.server.port", "out of range");
  if (cfg.tracker.coast_frames < 0) Section::fail("$.tracker.coast_frames", "must be >= 0");
  return cfg;
}

json config_to_json(const AppConfig& cfg) {
  const CameraIntrinsics& k = cfg.sim.rig.intrinsics;
  const TrackerConfig& t = cfg.tracker;
  const KalmanConfig& c = t.kalman;
  const NoteConfig& n = cfg.note;
  return {
      {"sim",
       {{"hover_range_m", cfg.sim.hover_range},
        {"tablet_noise_sigma_m", cfg.sim.tablet_noise_sigma},
        {"splat_sigma_px", cfg.sim.splat_sigma_px},
        {"background_max", cfg.sim.background_max},
        {"max_reflect_angle_deg", cfg.sim.max_reflect_angle_deg},
        {"rig",
         {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy},
          {"width", k.width}, {"height", k.height}, {"baseline_m", cfg.sim.rig.baseline}}}}},
      {"tracker",
       {{"threshold", t.threshold},
        {"min_disparity_px", t.min_disparity},
        {"min_points", t.min_points},
        {"min_elongation", t.min_elongation},
        {"axis_core_fraction", t.axis_core_fraction},
        {"coast_frames", t.coast_frames},
        {"icp",
         {{"max_iters", t.icp.max_iters},
          {"tol_px", t.icp.tol_px},
          {"epipolar_band_px", t.icp.epipolar_band_px}}},
        {"kalman",
         {{"process_sigma_pos_m", c.process_sigma_pos},
          {"process_sigma_axis_deg", c.process_sigma_axis_deg},
          {"measurement_sigma_pos_m", c.measurement_sigma_pos},
          {"measurement_sigma_axis_deg", c.measurement_sigma_axis_deg},
          {"initial_sigma_vel_mps", c.initial_sigma_vel},
          {"reset_nis", c.reset_nis},
          {"robust_nis", c.robust_nis},
          {"frame_dt_s", c.frame_dt}}}}},
      {"blend", {{"window_frames", cfg.blend.window_frames}}},
      {"note",
       {{"page_width_mm", n.page_width_mm},
        {"page_height_mm", n.page_height_mm},
        {"stroke_width_mm", n.stroke_width_mm},
        {"marker_width_mm", n.marker_width_mm},
        {"swipe_left_is_next", n.swipe_left_is_next},
        {"slide",
         {{"center_m", vec3_json(n.slide.center)},
          {"u_axis", vec3_json(n.slide.u_axis)},
          {"v_axis", vec3_json(n.slide.v_axis)},
          {"width_m", n.slide.width},
          {"height_m", n.slide.height}}}}},
      {"session", {{"default_duration_s", cfg.default_duration_s}}},
      {"server", {{"port", cfg.port}}},
  };
}

AppConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument, "cannot read config " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, "config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

AppConfig config_from_env() {
  const char* path = std::getenv(kConfigEnvVar);
  if (path == nullptr || *path == '\0') return AppConfig{};
  return load_config(path);
}

}  // namespace vrnote
