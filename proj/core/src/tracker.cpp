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

#include <algorithm>
#include <chrono>

#include "vrnote/error.hpp"
#include "vrnote/vision_tracker.hpp"

namespace vrnote {
namespace {

class StageTimer {
 public:
  explicit StageTimer(double& sink)
      : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    sink_ = std::chrono::duration<double, std::micro>(
                std::chrono::steady_clock::now() - start_)
                .count();
  }

 private:
  double& sink_;
  std::chrono::steady_clock::time_point start_;
};

double& stage(TrackDiagnostics& d, TrackStage s) {
  return d.stage_us[static_cast<std::size_t>(s)];
}

}  // namespace

std::pair<TrackResult, std::optional<KalmanState>> track_frame(
    const StereoFrame& frame, const std::optional<KalmanState>& state,
    const StereoRig& rig, const StylusModel& model, const TrackerConfig& cfg,
    const Plane& tablet_plane) {
  TrackResult result;
  TrackDiagnostics& diag = result.diagnostics;
  KalmanConfig kalman_cfg = cfg.kalman;
  kalman_cfg.tip_lever = model.tip_offset;
  std::optional<KalmanState> next = state;

  try {
    PixelSet left;
    PixelSet right;
    {
      StageTimer timer(stage(diag, TrackStage::kSegment));
      left = segment_bright(frame.left, cfg.threshold);
      right = segment_bright(frame.right, cfg.threshold);
    }
    diag.pixel_count = static_cast<int>(left.size());
    diag.right_pixel_count = static_cast<int>(right.size());
    if (diag.pixel_count < cfg.min_points) {
      throw Error(ErrorCode::kTooFewPoints,
                  std::to_string(diag.pixel_count) + " bright pixels");
    }

    Correspondences matches;
    {
      StageTimer timer(stage(diag, TrackStage::kIcp));
      matches = icp_match(left, right, cfg.icp);
      refine_row_spans(matches, left, right);
      fit_disparity_plane(matches);
    }
    diag.icp_iterations = matches.iterations;
    diag.icp_converged = matches.converged;
    diag.matched_pairs = static_cast<int>(matches.pairs.size());

    Reconstruction cloud;
    {
      StageTimer timer(stage(diag, TrackStage::kReconstruct));
      cloud = reconstruct(matches, rig, cfg.min_disparity);
      for (Vec3& p : cloud.points) p = rig.rig_pose.to_world(p);
    }
    diag.skipped_pairs = cloud.skipped;

    AxisFit fit;
    {
      StageTimer timer(stage(diag, TrackStage::kAxisFit));
      fit = fit_axis_pca(cloud.points, cfg.min_points, cfg.min_elongation);
      fit = refine_axis_core(cloud.points, fit, cfg.axis_core_fraction, 2,
                             cfg.min_points);
    }
    diag.elongation = fit.elongation;

    {
      StageTimer timer(stage(diag, TrackStage::kFilter));
      const std::optional<Vec3> prev_axis =
          next ? std::optional<Vec3>(next->axis()) : std::nullopt;
      const StylusPose measured =
          resolve_axis_and_tip(fit, model, prev_axis, tablet_plane.normal);
      diag.measurement = measured;
      if (next) {
        const int steps = std::max(1, frame.frame_index - next->frame);
        KalmanStepResult step =
            kalman_step(*next, measured, steps * kalman_cfg.frame_dt, kalman_cfg);
        diag.kalman_breakdown = step.breakdown;
        diag.kalman_reacquired = step.reacquired;
        next = step.state;
      } else {
        next = kalman_init(measured, kalman_cfg, frame.frame_index);
      }
      next->frame = frame.frame_index;
      next->last_update = frame.frame_index;
    }

    result.pose = next->pose();
    result.lost = false;
    result.confidence =
        std::clamp(static_cast<double>(diag.matched_pairs - cloud.skipped) /
                       std::max(1, diag.pixel_count),
                   0.0, 1.0);
    return {result, next};
  } catch (const Error& e) {
    diag.failure = e.what();
  } catch (const std::exception& e) {
    diag.failure = e.what();
  }

  // Lost frame: coast on the motion model until the budget runs out.
  result.lost = true;
  result.confidence = 0.0;
  if (next) {
    const int gap = frame.frame_index - next->last_update;
    if (gap <= cfg.coast_frames && gap > 0) {
      const int steps = std::max(1, frame.frame_index - next->frame);
      KalmanState coasted = kalman_predict(*next, steps * kalman_cfg.frame_dt, kalman_cfg);
      coasted.frame = frame.frame_index;
      coasted.x.segment<3>(6).normalize();
      diag.coasting_frames = gap;
      result.pose = coasted.pose();
      return {result, coasted};
    }
    result.pose = next->pose();
    next.reset();
  }
  return {result, next};
}

TrackResult VisionTracker::track(const StereoFrame& frame) {
  auto [result, state] = track_frame(frame, state_, rig_, model_, cfg_, tablet_);
  state_ = std::move(state);
  return result;
}

}  // namespace vrnote
