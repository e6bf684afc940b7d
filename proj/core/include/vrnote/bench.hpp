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


// Tracking benchmark: simulator -> vision tracker -> tablet switch, with
// per-frame errors against ground truth and latency percentiles.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrnote/hybrid_tracker.hpp"
#include "vrnote/stylus_sim.hpp"
#include "vrnote/vision_tracker.hpp"

namespace vrnote {

struct BenchConfig {
  SimConfig sim;
  TrackerConfig tracker;
  BlendConfig blend;
  std::uint64_t seed = 1;
};

struct BenchFrame {
  int frame = 0;
  double tip_err_mm = 0.0;    // vision output vs truth
  double axis_err_deg = 0.0;
  bool lost = false;
  int coasting = 0;
  double confidence = 0.0;
  std::array<double, kTrackStageCount> stage_us{};
  double total_us = 0.0;      // tracker plus fusion; rendering excluded
  FusedSource fused_source = FusedSource::kLost;
  double fused_tip_err_mm = 0.0;
  double fused_axis_err_deg = 0.0;
};

struct LatencyStats {
  double mean_us = 0.0;
  double p50_us = 0.0;
  double p95_us = 0.0;
  double p99_us = 0.0;
  double max_us = 0.0;
};

/// Nearest-rank percentiles of `samples` (copied).
LatencyStats latency_stats(std::vector<double> samples);

struct BenchReport {
  std::string scenario;
  int frames = 0;
  std::vector<BenchFrame> rows;
  double lost_rate = 0.0;
  int max_coasting = 0;
  /// Over frames that were not lost.
  double tip_rmse_mm = 0.0;
  double axis_rmse_deg = 0.0;
  /// Over frames with a defined fused pose.
  double fused_tip_rmse_mm = 0.0;
  double fused_axis_rmse_deg = 0.0;
  int blending_runs = 0;
  LatencyStats total;
  std::array<LatencyStats, kTrackStageCount> stages;
};

/// Throws UnknownScenario or InvalidArgument (frames < 1).
BenchReport bench_tracking(const std::string& scenario, int frames,
                           const BenchConfig& config = {});

std::string_view stage_name(TrackStage stage);

/// One row per frame: frame, tip_err_mm, axis_err_deg, lost, coasting,
/// confidence, stage_times_us (semicolon-joined), total_us, fused_source,
/// fused_tip_err_mm, fused_axis_err_deg.
std::string bench_csv(const BenchReport& report);
nlohmann::json bench_summary(const BenchReport& report);

}  // namespace vrnote
