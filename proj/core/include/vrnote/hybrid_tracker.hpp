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


// Source selection between the tablet and the vision tracker. The tablet wins
// whenever it reports hover; otherwise the vision track is used. A change of
// source is eased over a short ramp so the output never jumps.

#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "vrnote/geometry.hpp"
#include "vrnote/stylus_sim.hpp"
#include "vrnote/vision_tracker.hpp"

namespace vrnote {

enum class FusedSource { kTablet, kVision, kBlending, kLost };

std::string_view to_string(FusedSource source);

struct FusedPose {
  StylusPose pose;
  FusedSource source = FusedSource::kLost;
  double blend_progress = 0.0;  // in (0, 1) while blending, else 0 or 1
};

struct BlendConfig {
  int window_frames = 5;
  void validate() const;
};

/// Carried between frames by fuse().
struct BlendState {
  std::optional<StylusPose> last_output;
  /// Source the output is converging to; kLost before the first defined pose.
  FusedSource target = FusedSource::kLost;
  int step = 0;  // 0 when settled, 1..window_frames+1 while ramping
  Vec3 offset = Vec3::Zero();  // last output minus new source at the switch
  Vec3 anchor_axis = Vec3::UnitZ();
  /// Previous frame's readings, when that source was available.
  std::optional<Vec3> prev_tablet_tip;
  std::optional<Vec3> prev_vision_tip;
};

/// One frame of source selection. On a switch the output starts at the
/// previous output and reaches the new source after window_frames blended
/// frames: the position offset decays linearly (progress k / (window + 1)),
/// the axis is normalized-lerped from the previous output axis. The offset is
/// taken against the new source's previous-frame position (read directly, or
/// carried along with the old source's motion), so motion during the switch
/// frame is not folded into the ramp. With both sources unavailable the last
/// output is held and source is kLost.
FusedPose fuse(const TabletReading& tablet, const TrackResult& vision,
               BlendState& state, const BlendConfig& cfg = {});

std::vector<FusedPose> fuse_stream(
    const std::vector<std::pair<TabletReading, TrackResult>>& frames,
    const BlendConfig& cfg = {});

/// Normalized linear interpolation; `b` is flipped onto `a`'s hemisphere
/// first.
Vec3 nlerp_axis(const Vec3& a, const Vec3& b, double t);

/// Vision tracker plus tablet switch for a live frame stream.
class HybridTracker {
 public:
  HybridTracker(StereoRig rig, StylusModel model, TrackerConfig tracker_cfg = {},
                BlendConfig blend_cfg = {}, Plane tablet_plane = {})
      : vision_(std::move(rig), model, tracker_cfg, tablet_plane),
        blend_cfg_(blend_cfg) {
    blend_cfg_.validate();
  }

  struct Output {
    FusedPose fused;
    TrackResult vision;
  };

  Output track(const StereoFrame& frame, const TabletReading& tablet);
  void reset();

 private:
  VisionTracker vision_;
  BlendConfig blend_cfg_;
  BlendState blend_;
};

}  // namespace vrnote
