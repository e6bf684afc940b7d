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

#include "vrnote/stylus_sim.hpp"

#include <algorithm>
#include <cmath>

#include "vrnote/error.hpp"
#include "vrnote/random.hpp"

namespace vrnote {
namespace {

constexpr double kDeg = M_PI / 180.0;

/// Unit vector from elevation above the tablet and azimuth in the tablet
/// plane (0 = +x, counter-clockwise).
Vec3 pen_direction(double elevation_rad, double azimuth_rad) {
  return {std::cos(elevation_rad) * std::cos(azimuth_rad),
          std::cos(elevation_rad) * std::sin(azimuth_rad),
          std::sin(elevation_rad)};
}

// Right-handed writer: the pen leans back toward the right shoulder.
constexpr double kWriteElevation = 50.0 * kDeg;
constexpr double kWriteAzimuth = -26.0 * kDeg;

void render_camera(const std::vector<Vec3>& surface_points,
                   const std::vector<Vec3>& surface_normals,
                   const Vec3& camera_center_local, double max_reflect_cos,
                   const CameraIntrinsics& k, double splat_sigma,
                   std::vector<float>& intensity) {
  const double inv_two_sigma2 = 1.0 / (2.0 * splat_sigma * splat_sigma);
  const int reach = static_cast<int>(std::ceil(3.0 * splat_sigma));
  for (std::size_t i = 0; i < surface_points.size(); ++i) {
    const Vec3 p = surface_points[i] - camera_center_local;
    if (p.z() <= 1e-6) continue;
    const Vec3 to_camera = -p.normalized();
    if (surface_normals[i].dot(to_camera) < max_reflect_cos) continue;
    const double u = k.fx * p.x() / p.z() + k.cx;
    const double v = k.fy * p.y() / p.z() + k.cy;
    const int u0 = static_cast<int>(std::floor(u)) - reach;
    const int v0 = static_cast<int>(std::floor(v)) - reach;
    for (int row = std::max(v0, 0); row <= std::min(v0 + 2 * reach + 1, k.height - 1);
         ++row) {
      const double dv = row - v;
      for (int col = std::max(u0, 0);
           col <= std::min(u0 + 2 * reach + 1, k.width - 1); ++col) {
        const double du = col - u;
        const float value = static_cast<float>(
            255.0 * std::exp(-(du * du + dv * dv) * inv_two_sigma2));
        float& dst = intensity[static_cast<std::size_t>(row) * k.width + col];
        dst = std::max(dst, value);
      }
    }
  }
}

bool inside_image(const Vec3& p_cam, const CameraIntrinsics& k) {
  if (p_cam.z() <= 1e-6) return false;
  const double u = k.fx * p_cam.x() / p_cam.z() + k.cx;
  const double v = k.fy * p_cam.y() / p_cam.z() + k.cy;
  return u >= 0.0 && u <= k.width - 1 && v >= 0.0 && v <= k.height - 1;
}

}  // namespace

void StylusModel::validate() const {
  if (!(length > 0.0) || !(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "stylus length/radius must be > 0");
  }
  if (!(tape_start >= 0.0 && tape_start < tape_end && tape_end <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "tape band must satisfy 0 <= start < end <= 1");
  }
}

StereoRig SimConfig::default_rig() {
  StereoRig rig;
  rig.rig_pose = look_at(Vec3(-0.05, -0.28, 0.40), Vec3(0.02, 0.0, 0.03),
                         Vec3::UnitZ());
  return rig;
}

StereoFrame render_stereo(const StylusPose& truth, const StylusModel& model,
                          double occlusion_fraction, double pixel_noise_sigma,
                          std::uint64_t seed, const SimConfig& config) {
  model.validate();
  const StereoRig& rig = config.rig;
  const CameraIntrinsics& k = rig.intrinsics;

  // Stylus geometry in the left camera frame.
  const Vec3 axis = rig.rig_pose.direction_to_local(truth.axis.normalized());
  const Vec3 tip = rig.rig_pose.to_local(truth.tip);
  const Vec3 helper = std::abs(axis.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = axis.cross(helper).normalized();
  const Vec3 e2 = axis.cross(e1);

  const double s_begin = model.tape_start * model.length;
  const double s_end = model.tape_end * model.length;
  const double occluded = std::clamp(occlusion_fraction, 0.0, 1.0);
  const double s_visible = s_begin + occluded * (s_end - s_begin);

  // Sample spacing keeps neighbouring splats within ~0.15 px of each other at
  // the nearest point of the band.
  const double z_near = std::max(
      0.05, std::min((tip + s_begin * axis).z(), (tip + s_end * axis).z()) -
                model.radius);
  const double step = 0.15 * z_near / k.fx;
  const int n_along = std::max(2, static_cast<int>(std::ceil((s_end - s_begin) / step)) + 1);
  const int n_around =
      std::max(8, static_cast<int>(std::ceil(2.0 * M_PI * model.radius / step)));

  const Vec3 right_center(rig.baseline, 0.0, 0.0);
  bool any_in_view = false;
  std::vector<Vec3> points;
  std::vector<Vec3> normals;
  points.reserve(static_cast<std::size_t>(n_along) * n_around / 2);
  normals.reserve(points.capacity());
  for (int i = 0; i < n_along; ++i) {
    const double s = s_begin + (s_end - s_begin) * i / (n_along - 1);
    const Vec3 center = tip + s * axis;
    if (!any_in_view &&
        (inside_image(center, k) || inside_image(center - right_center, k))) {
      any_in_view = true;
    }
    if (s < s_visible || occluded >= 1.0) continue;
    for (int j = 0; j < n_around; ++j) {
      const double theta = 2.0 * M_PI * j / n_around;
      const Vec3 normal = std::cos(theta) * e1 + std::sin(theta) * e2;
      points.push_back(center + model.radius * normal);
      normals.push_back(normal);
    }
  }
  if (!any_in_view) {
    throw Error(ErrorCode::kStylusOutOfView);
  }

  const double reflect_cos = std::cos(config.max_reflect_angle_deg * M_PI / 180.0);
  const std::size_t n_pixels = static_cast<std::size_t>(k.width) * k.height;
  std::vector<float> left_intensity(n_pixels, 0.0f);
  std::vector<float> right_intensity(n_pixels, 0.0f);
  render_camera(points, normals, Vec3::Zero(), reflect_cos, k,
                config.splat_sigma_px, left_intensity);
  render_camera(points, normals, right_center, reflect_cos, k,
                config.splat_sigma_px, right_intensity);

  Rng rng(seed);
  auto compose = [&](const std::vector<float>& splats) {
    GrayImage image(k.width, k.height);
    auto& out = image.pixels();
    for (std::size_t i = 0; i < n_pixels; ++i) {
      const double background =
          std::floor(rng.uniform() * (config.background_max + 1));
      double value = background;
      if (splats[i] > background) {
        const double noise = rng.normal() * pixel_noise_sigma;
        value = std::clamp(static_cast<double>(splats[i]) + noise, background, 255.0);
      }
      out[i] = static_cast<std::uint8_t>(std::lround(value));
    }
    return image;
  };

  StereoFrame frame;
  frame.left = compose(left_intensity);
  frame.right = compose(right_intensity);
  frame.truth = StylusPose{truth.tip, truth.axis.normalized()};
  return frame;
}

TabletReading tablet_sample(const StylusPose& truth, const Plane& tablet_plane,
                            double hover_range, double noise_sigma,
                            std::uint64_t seed) {
  TabletReading reading;
  reading.noise_sigma = noise_sigma;
  reading.hover = tablet_plane.signed_distance(truth.tip) <= hover_range;
  if (reading.hover) {
    Rng rng(seed);
    const Vec3 tip_noise(rng.normal(), rng.normal(), rng.normal());
    const Vec3 axis_noise(rng.normal(), rng.normal(), rng.normal());
    reading.pose.tip = truth.tip + noise_sigma * tip_noise;
    reading.pose.axis = (truth.axis + noise_sigma * axis_noise).normalized();
  }
  return reading;
}

std::vector<std::string> scenario_names() { return {"write", "lift", "shake"}; }

SimScenario make_scenario(const std::string& name, std::uint64_t seed) {
  SimScenario scenario;
  scenario.name = name;
  scenario.seed = seed;
  const double dt = 1.0 / 70.0;

  if (name == "write") {
    // Nib on the tablet following a looping cursive path at ~0.1 m/s.
    scenario.trajectory = [dt](int i) {
      const double t = i * dt;
      StylusPose pose;
      pose.tip = Vec3(0.02 * std::sin(2.0 * M_PI * 0.5 * t) +
                          0.006 * std::sin(2.0 * M_PI * 3.0 * t),
                      0.008 * std::cos(2.0 * M_PI * 3.0 * t) - 0.002, 0.0);
      pose.axis = pen_direction(
          kWriteElevation + 3.0 * kDeg * std::sin(2.0 * M_PI * 0.8 * t),
          kWriteAzimuth + 5.0 * kDeg * std::sin(2.0 * M_PI * 0.6 * t));
      return pose;
    };
    scenario.occlusion_fraction = [](int) { return 0.0; };
    scenario.pixel_noise_sigma = 1.0;
  } else if (name == "lift") {
    // Rises straight up at 0.2 mm/frame: exactly 1 cm at frame 50, capped at
    // 5 cm.
    scenario.trajectory = [](int i) {
      StylusPose pose;
      const double height = std::min(0.05, 0.01 * i / 50.0);
      pose.tip = Vec3(0.0, 0.0, height);
      pose.axis = pen_direction(kWriteElevation, kWriteAzimuth);
      return pose;
    };
    scenario.occlusion_fraction = [](int) { return 0.0; };
    scenario.pixel_noise_sigma = 1.0;
  } else if (name == "shake") {
    // Held in the air and swung around quickly while the hand covers most of
    // the tape on and off.
    scenario.trajectory = [dt](int i) {
      const double t = i * dt;
      StylusPose pose;
      pose.tip = Vec3(0.01 * std::sin(2.0 * M_PI * 2.0 * t),
                      0.01 * std::cos(2.0 * M_PI * 1.5 * t), 0.05);
      pose.axis = pen_direction(
          (50.0 + 20.0 * std::sin(2.0 * M_PI * 2.5 * t)) * kDeg,
          kWriteAzimuth + 40.0 * kDeg * std::sin(2.0 * M_PI * 1.7 * t));
      return pose;
    };
    scenario.occlusion_fraction = [dt](int i) {
      const double t = i * dt;
      return 0.9 * std::clamp(1.6 * std::sin(2.0 * M_PI * 0.9 * t), 0.0, 1.0);
    };
    scenario.pixel_noise_sigma = 2.0;
  } else {
    throw Error(ErrorCode::kUnknownScenario, name);
  }
  return scenario;
}

SimFrame simulate_frame(const SimScenario& scenario, int frame_index,
                        const SimConfig& config) {
  const StylusPose truth = scenario.trajectory(frame_index);
  const std::uint64_t frame_seed =
      mix_seed(scenario.seed, static_cast<std::uint64_t>(frame_index));
  SimFrame frame;
  frame.stereo = render_stereo(truth, config.model,
                               scenario.occlusion_fraction(frame_index),
                               scenario.pixel_noise_sigma, frame_seed, config);
  frame.stereo.frame_index = frame_index;
  frame.tablet = tablet_sample(truth, config.tablet_plane, config.hover_range,
                               config.tablet_noise_sigma,
                               mix_seed(frame_seed, 1));
  return frame;
}

std::vector<SimFrame> run_scenario(const SimScenario& scenario, int frames,
                                   const SimConfig& config) {
  if (frames < 1) {
    throw Error(ErrorCode::kInvalidArgument, "frames must be >= 1");
  }
  std::vector<SimFrame> out;
  out.reserve(static_cast<std::size_t>(frames));
  for (int i = 0; i < frames; ++i) {
    try {
      out.push_back(simulate_frame(scenario, i, config));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kStylusOutOfView) throw;
      throw Error(ErrorCode::kStylusOutOfView,
                  "frame " + std::to_string(i));
    }
  }
  return out;
}

}  // namespace vrnote
