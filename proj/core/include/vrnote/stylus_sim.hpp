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

// Deterministic synthetic stereo-IR scene generator. Stands in for the
// head-mounted IR camera pair and the pen tablet, and provides ground-truth
// stylus poses for every frame.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vrnote/geometry.hpp"
#include "vrnote/image.hpp"

namespace vrnote {

/// Physical stylus with a band of IR-reflective tape. Positions along the
/// stylus are measured from the nib toward the tail.
struct StylusModel {
  double length = 0.14;
  double radius = 0.005;
  double tape_start = 0.35;  // fraction of length
  double tape_end = 0.75;    // fraction of length
  /// Distance from the tape-band centroid to the nib along the axis.
  double tip_offset = 0.077;

  void validate() const;
  double tape_center_distance() const {
    return 0.5 * (tape_start + tape_end) * length;
  }
};

struct StereoFrame {
  GrayImage left;
  GrayImage right;
  StylusPose truth;
  int frame_index = 0;
};

struct TabletReading {
  bool hover = false;
  StylusPose pose;  // meaningful only when hover
  double noise_sigma = 0.0;
};

/// Everything about the simulated world that is not per-scenario.
struct SimConfig {
  StereoRig rig = default_rig();
  Plane tablet_plane;  // z = 0, normal +z
  StylusModel model;
  double hover_range = 0.01;
  double tablet_noise_sigma = 0.0002;
  double splat_sigma_px = 0.7;
  int background_max = 80;
  /// Surface samples whose normal makes a larger angle than this with the
  /// view ray are too oblique to return a saturated reflection.
  double max_reflect_angle_deg = 60.0;
  double dt = 1.0 / 70.0;

  /// Head-mounted rig looking down at the writing area.
  static StereoRig default_rig();
};

struct SimScenario {
  std::string name;
  std::function<StylusPose(int)> trajectory;
  /// Contiguous hidden fraction of the tape, measured from its nib end.
  std::function<double(int)> occlusion_fraction;
  double pixel_noise_sigma = 1.0;
  std::uint64_t seed = 1;
};

struct SimFrame {
  StereoFrame stereo;
  TabletReading tablet;
};

/// Splats the visible tape surface into both cameras. `seed` fully
/// determines the noise. Throws StylusOutOfView when no tape sample lands
/// inside either image.
StereoFrame render_stereo(const StylusPose& truth, const StylusModel& model,
                          double occlusion_fraction, double pixel_noise_sigma,
                          std::uint64_t seed, const SimConfig& config);

/// Hover is inclusive at exactly `hover_range`.
TabletReading tablet_sample(const StylusPose& truth, const Plane& tablet_plane,
                            double hover_range, double noise_sigma,
                            std::uint64_t seed);

/// Built-in scenarios: "write", "lift", "shake".
SimScenario make_scenario(const std::string& name, std::uint64_t seed = 1);
std::vector<std::string> scenario_names();

/// Generates one frame of a scenario; pure in (scenario, config, index).
SimFrame simulate_frame(const SimScenario& scenario, int frame_index,
                        const SimConfig& config);

/// Frames 0..frames-1 at a fixed 1/70 s step. StylusOutOfView is rethrown
/// with the offending frame index in the message.
std::vector<SimFrame> run_scenario(const SimScenario& scenario, int frames,
                                   const SimConfig& config = {});

}  // namespace vrnote
