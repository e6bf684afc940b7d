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

// Stereo IR stylus tracker:
//
//   segment_bright -> icp_match -> reconstruct -> fit_axis_pca
//     -> resolve_axis_and_tip -> kalman_step
//
// track_frame() composes the stages and never throws; a failing stage marks
// the frame lost and the filter coasts on its motion model for a bounded
// number of frames.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "vrnote/geometry.hpp"
#include "vrnote/image.hpp"
#include "vrnote/stylus_sim.hpp"

namespace vrnote {

struct Pixel {
  double u = 0.0;
  double v = 0.0;
  std::uint8_t intensity = 0;
};

using PixelSet = std::vector<Pixel>;

inline constexpr int kDefaultBrightThreshold = 250;

/// Pixels strictly brighter than `threshold`, in row-major scan order.
PixelSet segment_bright(const GrayImage& image,
                        int threshold = kDefaultBrightThreshold);

struct IcpConfig {
  int max_iters = 20;
  double tol_px = 0.05;
  double epipolar_band_px = 2.0;
};

struct Correspondences {
  struct Pair {
    Pixel left;
    Pixel right;
    double disparity() const { return left.u - right.u; }
  };
  std::vector<Pair> pairs;
  double mean_disparity = 0.0;
  int iterations = 0;
  bool converged = false;  // false reports NotConverged
};

/// Estimates one horizontal shift between the two bright-pixel sets by
/// alternating nearest-neighbour matching inside the epipolar band with a
/// mean-shift update, starting from centroid alignment. Throws
/// NoCorrespondence when no pair falls within the band.
Correspondences icp_match(const PixelSet& left, const PixelSet& right,
                          const IcpConfig& config = {});

/// Replaces each pair's right-image u with the sub-pixel position at the same
/// fractional offset along the right image's bright run in that row. A single
/// shift cannot express the disparity gradient along a stylus that recedes in
/// depth; the row runs can. Rows without a run on both sides keep the
/// nearest-neighbour match.
void refine_row_spans(Correspondences& c, const PixelSet& left,
                      const PixelSet& right);

/// Fits disparity = a + b*u + c*v to the pairs by least squares (one round of
/// residual trimming) and rewrites every pair to the fitted disparity. Over a
/// thin, nearly planar band this is exact up to noise, so it removes the
/// per-row quantization of the span ends. Returns the RMS residual in pixels
/// of the kept pairs.
double fit_disparity_plane(Correspondences& c, double trim_px = 1.5);

struct Reconstruction {
  std::vector<Vec3> points;  // left camera frame
  int skipped = 0;
};

/// One point per pair from that pair's own disparity. Pairs at or below
/// `min_disparity` are skipped; throws AllPointsDegenerate when none remain.
Reconstruction reconstruct(const Correspondences& c, const StereoRig& rig,
                           double min_disparity = kDefaultMinDisparity);

struct AxisFit {
  Vec3 centroid = Vec3::Zero();
  Vec3 axis = Vec3::UnitX();
  /// First over second principal variance; +inf for a perfect line.
  double elongation = 1.0;
  Vec3 variances = Vec3::Zero();  // descending
};

/// Principal axis of a point cloud. Throws TooFewPoints below `min_points`
/// and DegenerateSpread when the cloud is not elongated enough to be a
/// stylus.
AxisFit fit_axis_pca(const std::vector<Vec3>& points, int min_points = 10,
                     double min_elongation = 4.0);

/// Refits the axis on the points whose projection lies in the central
/// `keep_fraction` of the cloud's extent along the current axis, repeated
/// `rounds` times. The cut ends of the tape band are not perpendicular to
/// the axis once reconstructed, which tilts a full-cloud fit toward the long
/// diagonal; the central section has parallel sides. The returned centroid
/// is still the mean of the full cloud.
AxisFit refine_axis_core(const std::vector<Vec3>& points, const AxisFit& fit,
                         double keep_fraction = 0.8, int rounds = 2,
                         int min_points = 10);

/// Fixes the axis sign (continuity with `prev_axis`, else pointing away from
/// the tablet) and places the tip `model.tip_offset` behind the centroid.
StylusPose resolve_axis_and_tip(const AxisFit& fit, const StylusModel& model,
                                const std::optional<Vec3>& prev_axis,
                                const Vec3& tablet_normal = Vec3::UnitZ());

struct KalmanConfig {
  double process_sigma_pos = 0.0005;      // m per frame
  double process_sigma_axis_deg = 0.5;    // per frame
  double measurement_sigma_pos = 0.002;   // m
  double measurement_sigma_axis_deg = 2.0;
  double initial_sigma_vel = 0.5;         // m/s
  /// Distance from the measured point (tape centroid) to the tip. A tip
  /// derived as centroid - lever * axis inherits the axis noise, so the
  /// measurement covariance couples the two blocks. 0 means independent.
  double tip_lever = 0.0;
  /// Normalized innovation squared above which the measurement is taken as
  /// a re-acquisition and the filter restarts from it (6 dof; 99.99% of a
  /// chi-square is ~27.9).
  double reset_nis = 30.0;
  /// Above this NIS the measurement covariance is scaled by nis/robust_nis
  /// before the update. 0 disables.
  double robust_nis = 12.0;
  double frame_dt = 1.0 / 70.0;
};

using Vector9d = Eigen::Matrix<double, 9, 1>;
using Matrix9d = Eigen::Matrix<double, 9, 9>;

/// State layout: tip position (0..2), tip velocity (3..5), axis (6..8).
struct KalmanState {
  Vector9d x = Vector9d::Zero();
  Matrix9d covariance = Matrix9d::Identity();
  int last_update = 0;  // frame index of the last measurement
  int frame = 0;        // frame index the estimate refers to

  Vec3 tip() const { return x.segment<3>(0); }
  Vec3 velocity() const { return x.segment<3>(3); }
  Vec3 axis() const { return x.segment<3>(6); }
  StylusPose pose() const { return {tip(), axis().normalized()}; }
};

KalmanState kalman_init(const StylusPose& measurement, const KalmanConfig& cfg,
                        int frame_index = 0);

/// Constant-velocity prediction over `dt` seconds.
KalmanState kalman_predict(const KalmanState& state, double dt,
                           const KalmanConfig& cfg);

struct KalmanStepResult {
  KalmanState state;
  bool breakdown = false;  // NumericalBreakdown: state was reset
  bool reacquired = false;  // innovation gate fired: state was reset
  double nis = 0.0;
};

/// Predict then update with a direct observation of tip and axis. If the
/// covariance stops being positive semi-definite the filter is reset to the
/// prior around `measurement` and `breakdown` is set.
KalmanStepResult kalman_step(const KalmanState& state,
                             const StylusPose& measurement, double dt,
                             const KalmanConfig& cfg);

struct TrackerConfig {
  int threshold = kDefaultBrightThreshold;
  IcpConfig icp;
  double min_disparity = kDefaultMinDisparity;
  int min_points = 10;
  double min_elongation = 4.0;
  double axis_core_fraction = 0.8;  // 1.0 disables the core refit
  KalmanConfig kalman;
  int coast_frames = 7;
};

enum class TrackStage { kSegment, kIcp, kReconstruct, kAxisFit, kFilter };
inline constexpr std::size_t kTrackStageCount = 5;

struct TrackDiagnostics {
  int pixel_count = 0;        // left image
  int right_pixel_count = 0;
  int matched_pairs = 0;
  int skipped_pairs = 0;
  double elongation = 0.0;
  int icp_iterations = 0;
  bool icp_converged = false;
  bool kalman_breakdown = false;
  bool kalman_reacquired = false;
  /// Unfiltered pose from the axis fit, when the frame produced one.
  std::optional<StylusPose> measurement;
  int coasting_frames = 0;    // consecutive frames without a measurement
  std::string failure;        // empty on success
  std::array<double, kTrackStageCount> stage_us{};
};

struct TrackResult {
  StylusPose pose;
  bool lost = true;
  double confidence = 0.0;
  TrackDiagnostics diagnostics;
};

/// One step of the tracking state machine. Never throws.
std::pair<TrackResult, std::optional<KalmanState>> track_frame(
    const StereoFrame& frame, const std::optional<KalmanState>& state,
    const StereoRig& rig, const StylusModel& model,
    const TrackerConfig& cfg = {}, const Plane& tablet_plane = {});

/// Owns the filter state for a frame stream.
class VisionTracker {
 public:
  VisionTracker(StereoRig rig, StylusModel model, TrackerConfig cfg = {},
                Plane tablet_plane = {})
      : rig_(std::move(rig)), model_(model), cfg_(cfg), tablet_(tablet_plane) {}

  TrackResult track(const StereoFrame& frame);
  const std::optional<KalmanState>& state() const { return state_; }
  void reset() { state_.reset(); }

 private:
  StereoRig rig_;
  StylusModel model_;
  TrackerConfig cfg_;
  Plane tablet_;
  std::optional<KalmanState> state_;
};

}  // namespace vrnote
