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
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "vrnote/error.hpp"
#include "vrnote/vision_tracker.hpp"

namespace vrnote {

AxisFit fit_axis_pca(const std::vector<Vec3>& points, int min_points,
                     double min_elongation) {
  if (static_cast<int>(points.size()) < min_points || points.empty()) {
    throw Error(ErrorCode::kTooFewPoints,
                std::to_string(points.size()) + " < " + std::to_string(min_points));
  }
  AxisFit fit;
  for (const Vec3& p : points) fit.centroid += p;
  fit.centroid /= static_cast<double>(points.size());

  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
  for (const Vec3& p : points) {
    const Vec3 d = p - fit.centroid;
    covariance.noalias() += d * d.transpose();
  }
  covariance /= static_cast<double>(points.size());

  // Eigenvalues come back ascending.
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(covariance);
  const Vec3 values = solver.eigenvalues();
  fit.variances = Vec3(values(2), values(1), values(0));
  fit.axis = solver.eigenvectors().col(2).normalized();

  const double first = std::max(values(2), 0.0);
  const double second = std::max(values(1), 0.0);
  if (second <= first * 1e-15) {
    fit.elongation = first > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  } else {
    fit.elongation = first / second;
  }
  if (fit.elongation < min_elongation) {
    throw Error(ErrorCode::kDegenerateSpread,
                "elongation " + std::to_string(fit.elongation));
  }
  return fit;
}

AxisFit refine_axis_core(const std::vector<Vec3>& points, const AxisFit& fit,
                         double keep_fraction, int rounds, int min_points) {
  AxisFit current = fit;
  if (keep_fraction >= 1.0) return current;
  std::vector<Vec3> core;
  core.reserve(points.size());
  for (int round = 0; round < rounds; ++round) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vec3& p : points) {
      const double t = (p - current.centroid).dot(current.axis);
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo) * keep_fraction;
    core.clear();
    for (const Vec3& p : points) {
      if (std::abs((p - current.centroid).dot(current.axis) - mid) <= half) {
        core.push_back(p);
      }
    }
    if (static_cast<int>(core.size()) < min_points) break;
    // Elongation is gated on the full cloud; the core only steers the axis.
    const AxisFit refit = fit_axis_pca(core, min_points, 0.0);
    current.axis = refit.axis;
    current.centroid = refit.centroid;
  }
  current.centroid = fit.centroid;
  current.elongation = fit.elongation;
  current.variances = fit.variances;
  return current;
}

StylusPose resolve_axis_and_tip(const AxisFit& fit, const StylusModel& model,
                                const std::optional<Vec3>& prev_axis,
                                const Vec3& tablet_normal) {
  Vec3 axis = fit.axis.normalized();
  const Vec3 reference = prev_axis ? *prev_axis : tablet_normal;
  if (axis.dot(reference) < 0.0) axis = -axis;
  return {fit.centroid - model.tip_offset * axis, axis};
}

}  // namespace vrnote
