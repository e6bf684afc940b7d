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


#include "vrnote/hybrid_tracker.hpp"

#include "vrnote/error.hpp"

namespace vrnote {

std::string_view to_string(FusedSource source) {
  switch (source) {
    case FusedSource::kTablet: return "tablet";
    case FusedSource::kVision: return "vision";
    case FusedSource::kBlending: return "blending";
    case FusedSource::kLost: return "lost";
  }
  return "lost";
}

void BlendConfig::validate() const {
  if (window_frames < 1) {
    throw Error(ErrorCode::kInvalidArgument, "window_frames must be >= 1");
  }
}

Vec3 nlerp_axis(const Vec3& a, const Vec3& b, double t) {
  const Vec3 aligned = a.dot(b) < 0.0 ? Vec3(-b) : b;
  const Vec3 mixed = (1.0 - t) * a + t * aligned;
  const double n = mixed.norm();
  // Antiparallel inputs were aligned above, so only a zero input lands here.
  return n > 0.0 ? Vec3(mixed / n) : aligned.normalized();
}

FusedPose fuse(const TabletReading& tablet, const TrackResult& vision,
               BlendState& state, const BlendConfig& cfg) {
  cfg.validate();
  FusedPose out;

  const std::optional<Vec3> tablet_tip =
      tablet.hover ? std::optional<Vec3>(tablet.pose.tip) : std::nullopt;
  const std::optional<Vec3> vision_tip =
      vision.lost ? std::nullopt : std::optional<Vec3>(vision.pose.tip);
  const std::optional<Vec3> prev_tablet = state.prev_tablet_tip;
  const std::optional<Vec3> prev_vision = state.prev_vision_tip;
  state.prev_tablet_tip = tablet_tip;
  state.prev_vision_tip = vision_tip;

  std::optional<StylusPose> source_pose;
  FusedSource target = FusedSource::kLost;
  if (tablet.hover) {
    source_pose = tablet.pose;
    target = FusedSource::kTablet;
  } else if (!vision.lost) {
    source_pose = vision.pose;
    target = FusedSource::kVision;
  }

  if (!source_pose) {
    out.source = FusedSource::kLost;
    if (state.last_output) out.pose = *state.last_output;
    // A later source starts a fresh ramp from the held pose.
    state.target = FusedSource::kLost;
    state.step = 0;
    return out;
  }

  const StylusPose current{source_pose->tip, source_pose->axis.normalized()};
  if (target != state.target && state.last_output) {
    // Where the new source was one frame ago.
    const bool to_tablet = target == FusedSource::kTablet;
    std::optional<Vec3> new_prev = to_tablet ? prev_tablet : prev_vision;
    if (!new_prev && state.target != FusedSource::kLost) {
      const std::optional<Vec3>& old_now = to_tablet ? vision_tip : tablet_tip;
      const std::optional<Vec3>& old_prev = to_tablet ? prev_vision : prev_tablet;
      if (old_now && old_prev) new_prev = current.tip - (*old_now - *old_prev);
    }
    state.offset = state.last_output->tip - new_prev.value_or(current.tip);
    state.anchor_axis = state.last_output->axis;
    state.step = 1;
  } else if (target != state.target) {
    state.step = 0;  // first defined pose: nothing to ease from
  }
  state.target = target;

  const int ramp = cfg.window_frames + 1;
  if (state.step > 0 && state.step < ramp) {
    const double p = static_cast<double>(state.step) / ramp;
    out.pose.tip = current.tip + (1.0 - p) * state.offset;
    out.pose.axis = nlerp_axis(state.anchor_axis, current.axis, p);
    if (out.pose.axis.dot(current.axis) < 0.0) out.pose.axis = -out.pose.axis;
    out.source = FusedSource::kBlending;
    out.blend_progress = p;
    ++state.step;
  } else {
    out.pose = current;
    out.source = target;
    out.blend_progress = 1.0;
    state.step = 0;
  }
  state.last_output = out.pose;
  return out;
}

std::vector<FusedPose> fuse_stream(
    const std::vector<std::pair<TabletReading, TrackResult>>& frames,
    const BlendConfig& cfg) {
  cfg.validate();
  if (frames.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty frame sequence");
  }
  BlendState state;
  std::vector<FusedPose> out;
  out.reserve(frames.size());
  for (const auto& [tablet, vision] : frames) {
    out.push_back(fuse(tablet, vision, state, cfg));
  }
  return out;
}

HybridTracker::Output HybridTracker::track(const StereoFrame& frame,
                                           const TabletReading& tablet) {
  Output out;
  out.vision = vision_.track(frame);
  out.fused = fuse(tablet, out.vision, blend_, blend_cfg_);
  return out;
}

void HybridTracker::reset() {
  vision_.reset();
  blend_ = BlendState{};
}

}  // namespace vrnote
