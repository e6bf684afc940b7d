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

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "vrnote/vision_tracker.hpp"

namespace vrnote {
namespace {

constexpr double kDeg = M_PI / 180.0;

using Matrix69d = Eigen::Matrix<double, 6, 9>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Vector6d = Eigen::Matrix<double, 6, 1>;

Matrix9d transition(double dt) {
  Matrix9d f = Matrix9d::Identity();
  f.block<3, 3>(0, 3) = dt * Eigen::Matrix3d::Identity();
  return f;
}

/// Piecewise white-noise acceleration on the tip, random walk on the axis.
/// The acceleration density is chosen so a single frame adds
/// process_sigma_pos of position spread.
Matrix9d process_noise(double dt, const KalmanConfig& cfg) {
  Matrix9d q = Matrix9d::Zero();
  const double frame_dt = cfg.frame_dt;
  const double sigma_acc = 2.0 * cfg.process_sigma_pos / (frame_dt * frame_dt);
  const double var_acc = sigma_acc * sigma_acc;
  const auto i3 = Eigen::Matrix3d::Identity();
  q.block<3, 3>(0, 0) = var_acc * std::pow(dt, 4) / 4.0 * i3;
  q.block<3, 3>(0, 3) = var_acc * std::pow(dt, 3) / 2.0 * i3;
  q.block<3, 3>(3, 0) = q.block<3, 3>(0, 3);
  q.block<3, 3>(3, 3) = var_acc * dt * dt * i3;
  const double sigma_axis = cfg.process_sigma_axis_deg * kDeg;
  q.block<3, 3>(6, 6) = sigma_axis * sigma_axis * (dt / frame_dt) * i3;
  return q;
}

Matrix69d observation() {
  Matrix69d h = Matrix69d::Zero();
  h.block<3, 3>(0, 0) = Eigen::Matrix3d::Identity();
  h.block<3, 3>(3, 6) = Eigen::Matrix3d::Identity();
  return h;
}

Matrix6d measurement_noise(const KalmanConfig& cfg) {
  Matrix6d r = Matrix6d::Zero();
  const double sp = cfg.measurement_sigma_pos;
  const double sa = cfg.measurement_sigma_axis_deg * kDeg;
  const double lever = cfg.tip_lever;
  const auto i3 = Eigen::Matrix3d::Identity();
  r.block<3, 3>(0, 0) = (sp * sp + lever * lever * sa * sa) * i3;
  r.block<3, 3>(0, 3) = -lever * sa * sa * i3;
  r.block<3, 3>(3, 0) = r.block<3, 3>(0, 3);
  r.block<3, 3>(3, 3) = sa * sa * i3;
  return r;
}

bool covariance_valid(const Matrix9d& p) {
  if (!p.allFinite()) return false;
  if (!p.isApprox(p.transpose(), 1e-9)) return false;
  const Eigen::SelfAdjointEigenSolver<Matrix9d> solver(p, Eigen::EigenvaluesOnly);
  const double scale = std::max(1e-300, p.diagonal().cwiseAbs().maxCoeff());
  return solver.eigenvalues().minCoeff() >= -1e-9 * scale;
}

}  // namespace

KalmanState kalman_init(const StylusPose& measurement, const KalmanConfig& cfg,
                        int frame_index) {
  KalmanState s;
  s.x.segment<3>(0) = measurement.tip;
  s.x.segment<3>(6) = measurement.axis.normalized();
  s.covariance = Matrix9d::Zero();
  const double sv = cfg.initial_sigma_vel;
  const Matrix6d r = measurement_noise(cfg);
  s.covariance.block<3, 3>(0, 0) = r.block<3, 3>(0, 0);
  s.covariance.block<3, 3>(0, 6) = r.block<3, 3>(0, 3);
  s.covariance.block<3, 3>(6, 0) = r.block<3, 3>(3, 0);
  s.covariance.block<3, 3>(6, 6) = r.block<3, 3>(3, 3);
  s.covariance.block<3, 3>(3, 3) = sv * sv * Eigen::Matrix3d::Identity();
  s.last_update = frame_index;
  s.frame = frame_index;
  return s;
}

KalmanState kalman_predict(const KalmanState& state, double dt,
                           const KalmanConfig& cfg) {
  KalmanState out = state;
  const Matrix9d f = transition(dt);
  out.x = f * state.x;
  out.covariance = f * state.covariance * f.transpose() + process_noise(dt, cfg);
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  return out;
}

KalmanStepResult kalman_step(const KalmanState& state,
                             const StylusPose& measurement, double dt,
                             const KalmanConfig& cfg) {
  KalmanStepResult result;
  const int frame = state.frame + std::max(1, static_cast<int>(std::lround(dt / cfg.frame_dt)));
  const KalmanState predicted = kalman_predict(state, dt, cfg);

  Vec3 axis_meas = measurement.axis.normalized();
  if (axis_meas.dot(predicted.axis()) < 0.0) axis_meas = -axis_meas;
  Vector6d z;
  z << measurement.tip, axis_meas;

  const Matrix69d h = observation();
  const Matrix6d r = measurement_noise(cfg);
  const Vector6d innovation = z - h * predicted.x;
  const Matrix6d s = h * predicted.covariance * h.transpose() + r;
  const Eigen::LDLT<Matrix6d> s_ldlt(s);
  result.nis = innovation.dot(s_ldlt.solve(innovation));
  if (s_ldlt.isPositive() && cfg.reset_nis > 0.0 && result.nis > cfg.reset_nis) {
    result.state = kalman_init(measurement, cfg, frame);
    result.reacquired = true;
    return result;
  }
  Matrix6d r_eff = r;
  Eigen::LDLT<Matrix6d> gain_ldlt = s_ldlt;
  if (cfg.robust_nis > 0.0 && result.nis > cfg.robust_nis) {
    // Huber-style down-weighting of a suspicious measurement.
    r_eff = r * (result.nis / cfg.robust_nis);
    gain_ldlt.compute(h * predicted.covariance * h.transpose() + r_eff);
  }
  const Eigen::Matrix<double, 9, 6> gain =
      gain_ldlt.solve(h * predicted.covariance.transpose()).transpose();

  KalmanState updated = predicted;
  updated.x = predicted.x + gain * innovation;
  // Joseph form keeps the covariance symmetric and PSD under rounding.
  const Matrix9d i_kh = Matrix9d::Identity() - gain * h;
  updated.covariance = i_kh * predicted.covariance * i_kh.transpose() +
                       gain * r_eff * gain.transpose();
  updated.covariance = 0.5 * (updated.covariance + updated.covariance.transpose());
  const Vec3 axis = updated.axis();
  if (axis.norm() > 0.0) updated.x.segment<3>(6) = axis.normalized();
  updated.frame = frame;
  updated.last_update = frame;

  if (!s_ldlt.isPositive() || !updated.x.allFinite() ||
      !covariance_valid(updated.covariance)) {
    result.state = kalman_init(measurement, cfg, frame);
    result.breakdown = true;
    return result;
  }
  result.state = updated;
  return result;
}

}  // namespace vrnote
