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


// Tunables loaded from a JSON file. Every key is optional; unknown keys are
// an error so typos do not pass silently. The file named by the
// VRNOTE_CONFIG environment variable is used when set.
//
//   {
//     "sim":     {"hover_range_m", "tablet_noise_sigma_m", "splat_sigma_px",
//                 "background_max", "max_reflect_angle_deg",
//                 "rig": {"fx", "fy", "cx", "cy", "width", "height",
//                         "baseline_m"}},
//     "tracker": {"threshold", "min_disparity_px", "min_points",
//                 "min_elongation", "axis_core_fraction", "coast_frames",
//                 "icp": {"max_iters", "tol_px", "epipolar_band_px"},
//                 "kalman": {"process_sigma_pos_m", "process_sigma_axis_deg",
//                            "measurement_sigma_pos_m",
//                            "measurement_sigma_axis_deg",
//                            "initial_sigma_vel_mps", "reset_nis",
//                            "frame_dt_s"}},
//     "blend":   {"window_frames"},
//     "note":    {"page_width_mm", "page_height_mm", "stroke_width_mm",
//                 "marker_width_mm", "swipe_left_is_next",
//                 "slide": {"center_m", "u_axis", "v_axis", "width_m",
//                           "height_m"}},
//     "session": {"default_duration_s"},
//     "server":  {"port"}
//   }

#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "vrnote/bench.hpp"
#include "vrnote/note_engine.hpp"

namespace vrnote {

inline constexpr const char* kConfigEnvVar = "VRNOTE_CONFIG";

struct AppConfig {
  SimConfig sim;
  TrackerConfig tracker;
  BlendConfig blend;
  NoteConfig note;
  double default_duration_s = 3600.0;
  int port = 8080;

  BenchConfig bench() const { return {sim, tracker, blend, 1}; }
};

/// Overrides the defaults with the keys present in `j`. Throws
/// InvalidArgument naming the offending key.
AppConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const AppConfig& cfg);
AppConfig load_config(const std::filesystem::path& path);
/// Defaults, or load_config($VRNOTE_CONFIG) when the variable is set.
AppConfig config_from_env();

}  // namespace vrnote
