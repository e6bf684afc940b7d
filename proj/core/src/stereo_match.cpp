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
#include <map>

#include <Eigen/Dense>

#include "vrnote/error.hpp"
#include "vrnote/vision_tracker.hpp"

namespace vrnote {
namespace {

/// Right-image pixels bucketed by integer row, each bucket sorted by u.
class RowIndex {
 public:
  explicit RowIndex(const PixelSet& pixels) : pixels_(pixels) {
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      rows_[static_cast<int>(std::floor(pixels[i].v))].push_back(i);
    }
    for (auto& [row, bucket] : rows_) {
      std::sort(bucket.begin(), bucket.end(), [&](std::size_t a, std::size_t b) {
        return pixels_[a].u < pixels_[b].u;
      });
    }
  }

  /// Index of the pixel nearest to (u, v) among those with |v_r - v| <= band,
  /// or -1.
  std::ptrdiff_t nearest(double u, double v, double band) const {
    double best = std::numeric_limits<double>::infinity();
    std::ptrdiff_t best_index = -1;
    const int row_lo = static_cast<int>(std::floor(v - band));
    const int row_hi = static_cast<int>(std::floor(v + band));
    for (auto it = rows_.lower_bound(row_lo);
         it != rows_.end() && it->first <= row_hi; ++it) {
      const auto& bucket = it->second;
      auto pos = std::lower_bound(
          bucket.begin(), bucket.end(), u,
          [&](std::size_t idx, double value) { return pixels_[idx].u < value; });
      // Walk outward in both directions while the u-gap alone can still win.
      for (auto fwd = pos; fwd != bucket.end(); ++fwd) {
        const Pixel& p = pixels_[*fwd];
        const double du = p.u - u;
        if (du * du >= best) break;
        consider(p, *fwd, u, v, band, best, best_index);
      }
      for (auto back = pos; back != bucket.begin();) {
        --back;
        const Pixel& p = pixels_[*back];
        const double du = u - p.u;
        if (du * du >= best) break;
        consider(p, *back, u, v, band, best, best_index);
      }
    }
    return best_index;
  }

 private:
  static void consider(const Pixel& p, std::size_t index, double u, double v,
                       double band, double& best, std::ptrdiff_t& best_index) {
    const double dv = p.v - v;
    if (std::abs(dv) > band) return;
    const double du = p.u - u;
    const double d2 = du * du + dv * dv;
    // Ties resolve to the lower index so results do not depend on bucket
    // traversal order.
    if (d2 < best || (d2 == best && static_cast<std::ptrdiff_t>(index) < best_index)) {
      best = d2;
      best_index = static_cast<std::ptrdiff_t>(index);
    }
  }

  const PixelSet& pixels_;
  std::map<int, std::vector<std::size_t>> rows_;
};

double mean_u(const PixelSet& pixels) {
  double sum = 0.0;
  for (const Pixel& p : pixels) sum += p.u;
  return sum / static_cast<double>(pixels.size());
}

}  // namespace

PixelSet segment_bright(const GrayImage& image, int threshold) {
  PixelSet out;
  const auto& data = image.pixels();
  const int width = image.width();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] > threshold) {
      out.push_back(Pixel{static_cast<double>(static_cast<int>(i % width)),
                          static_cast<double>(static_cast<int>(i / width)),
                          data[i]});
    }
  }
  return out;
}

Correspondences icp_match(const PixelSet& left, const PixelSet& right,
                          const IcpConfig& config) {
  if (left.empty() || right.empty()) {
    throw Error(ErrorCode::kNoCorrespondence, "empty pixel set");
  }
  const RowIndex index(right);
  Correspondences result;
  double shift = mean_u(left) - mean_u(right);

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    result.pairs.clear();
    double sum = 0.0;
    for (const Pixel& l : left) {
      const std::ptrdiff_t j = index.nearest(l.u - shift, l.v, config.epipolar_band_px);
      if (j < 0) continue;
      const Pixel& r = right[static_cast<std::size_t>(j)];
      result.pairs.push_back({l, r});
      sum += l.u - r.u;
    }
    result.iterations = iter;
    if (result.pairs.empty()) {
      throw Error(ErrorCode::kNoCorrespondence,
                  "no pair inside the epipolar band");
    }
    const double updated = sum / static_cast<double>(result.pairs.size());
    const double change = std::abs(updated - shift);
    shift = updated;
    if (change < config.tol_px) {
      result.converged = true;
      break;
    }
  }
  result.mean_disparity = shift;
  return result;
}

void refine_row_spans(Correspondences& c, const PixelSet& left,
                      const PixelSet& right) {
  struct Span {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double u) {
      lo = std::min(lo, u);
      hi = std::max(hi, u);
    }
  };
  std::map<int, Span> left_rows;
  std::map<int, Span> right_rows;
  for (const Pixel& p : left) left_rows[static_cast<int>(std::floor(p.v))].add(p.u);
  for (const Pixel& p : right) right_rows[static_cast<int>(std::floor(p.v))].add(p.u);

  for (auto& pair : c.pairs) {
    const int row = static_cast<int>(std::floor(pair.left.v));
    const auto r = right_rows.find(row);
    if (r == right_rows.end()) continue;
    const Span& ls = left_rows.at(row);
    const Span& rs = r->second;
    const double left_width = ls.hi - ls.lo;
    const double fraction = left_width > 0.0 ? (pair.left.u - ls.lo) / left_width : 0.5;
    pair.right.u = rs.lo + fraction * (rs.hi - rs.lo);
    pair.right.v = pair.left.v;
  }
}

double fit_disparity_plane(Correspondences& c, double trim_px) {
  if (c.pairs.size() < 3) return 0.0;
  double mu = 0.0;
  double mv = 0.0;
  for (const auto& p : c.pairs) {
    mu += p.left.u;
    mv += p.left.v;
  }
  mu /= static_cast<double>(c.pairs.size());
  mv /= static_cast<double>(c.pairs.size());

  std::vector<bool> keep(c.pairs.size(), true);
  Eigen::Vector3d coeffs = Eigen::Vector3d::Zero();
  double rms = 0.0;
  for (int round = 0; round < 2; ++round) {
    Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    int used = 0;
    for (std::size_t i = 0; i < c.pairs.size(); ++i) {
      if (!keep[i]) continue;
      const auto& p = c.pairs[i];
      const Eigen::Vector3d row(1.0, p.left.u - mu, p.left.v - mv);
      normal.noalias() += row * row.transpose();
      rhs += row * p.disparity();
      ++used;
    }
    if (used < 3) break;
    // Minimum-norm solution handles single-row or single-column blobs.
    coeffs = normal.completeOrthogonalDecomposition().solve(rhs);
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < c.pairs.size(); ++i) {
      const auto& p = c.pairs[i];
      const double fitted = coeffs(0) + coeffs(1) * (p.left.u - mu) + coeffs(2) * (p.left.v - mv);
      const double residual = p.disparity() - fitted;
      if (keep[i]) sum_sq += residual * residual;
      if (round == 0) keep[i] = std::abs(residual) <= trim_px;
    }
    rms = std::sqrt(sum_sq / used);
  }
  for (auto& p : c.pairs) {
    const double fitted = coeffs(0) + coeffs(1) * (p.left.u - mu) + coeffs(2) * (p.left.v - mv);
    p.right.u = p.left.u - fitted;
  }
  return rms;
}

Reconstruction reconstruct(const Correspondences& c, const StereoRig& rig,
                           double min_disparity) {
  Reconstruction out;
  out.points.reserve(c.pairs.size());
  for (const auto& pair : c.pairs) {
    const double d = pair.disparity();
    if (!(d > min_disparity)) {
      ++out.skipped;
      continue;
    }
    out.points.push_back(unproject_stereo(pair.left.u, pair.left.v, d, rig,
                                          min_disparity));
  }
  if (out.points.empty()) {
    throw Error(ErrorCode::kAllPointsDegenerate,
                std::to_string(out.skipped) + " pairs skipped");
  }
  return out;
}

}  // namespace vrnote
