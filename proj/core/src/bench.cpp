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


#include "vrnote/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "vrnote/error.hpp"

namespace vrnote {
namespace {

constexpr double kRadToDeg = 180.0 / M_PI;

nlohmann::json stats_json(const LatencyStats& s) {
  return {{"mean_us", s.mean_us}, {"p50_us", s.p50_us}, {"p95_us", s.p95_us},
          {"p99_us", s.p99_us}, {"max_us", s.max_us}};
}

}  // namespace

LatencyStats latency_stats(std::vector<double> samples) {
  LatencyStats s;
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  auto rank = [&](double q) {
    const auto n = samples.size();
    const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    return samples[std::clamp<std::size_t>(k, 1, n) - 1];
  };
  s.mean_us = std::accumulate(samples.begin(), samples.end(), 0.0) /
              static_cast<double>(samples.size());
  s.p50_us = rank(0.50);
  s.p95_us = rank(0.95);
  s.p99_us = rank(0.99);
  s.max_us = samples.back();
  return s;
}

std::string_view stage_name(TrackStage stage) {
  switch (stage) {
    case TrackStage::kSegment: return "segment";
    case TrackStage::kIcp: return "icp";
    case TrackStage::kReconstruct: return "reconstruct";
    case TrackStage::kAxisFit: return "axis_fit";
    case TrackStage::kFilter: return "filter";
  }
  return "?";
}

BenchReport bench_tracking(const std::string& scenario, int frames,
                           const BenchConfig& config) {
  if (frames < 1) throw Error(ErrorCode::kInvalidArgument, "frames must be >= 1");
  const SimScenario sc = make_scenario(scenario, config.seed);
  HybridTracker tracker(config.sim.rig, config.sim.model, config.tracker,
                        config.blend, config.sim.tablet_plane);

  BenchReport report;
  report.scenario = scenario;
  report.frames = frames;
  report.rows.reserve(static_cast<std::size_t>(frames));
  double tip_sq = 0.0, axis_sq = 0.0, fused_tip_sq = 0.0, fused_axis_sq = 0.0;
  int tracked = 0, fused_defined = 0, lost = 0;
  FusedSource previous = FusedSource::kLost;

  for (int i = 0; i < frames; ++i) {
    SimFrame sim;
    try {
      sim = simulate_frame(sc, i, config.sim);
    } catch (const Error& e) {
      throw Error(e.code(), "frame " + std::to_string(i) + ": " + e.what());
    }
    const StylusPose& truth = sim.stereo.truth;

    const auto start = std::chrono::steady_clock::now();
    const HybridTracker::Output out = tracker.track(sim.stereo, sim.tablet);
    const auto stop = std::chrono::steady_clock::now();

    BenchFrame row;
    row.frame = i;
    row.total_us = std::chrono::duration<double, std::micro>(stop - start).count();
    row.stage_us = out.vision.diagnostics.stage_us;
    row.lost = out.vision.lost;
    row.coasting = out.vision.diagnostics.coasting_frames;
    row.confidence = out.vision.confidence;
    row.tip_err_mm = (out.vision.pose.tip - truth.tip).norm() * 1000.0;
    row.axis_err_deg = angle_between(out.vision.pose.axis, truth.axis) * kRadToDeg;
    row.fused_source = out.fused.source;
    row.fused_tip_err_mm = (out.fused.pose.tip - truth.tip).norm() * 1000.0;
    row.fused_axis_err_deg = angle_between(out.fused.pose.axis, truth.axis) * kRadToDeg;

    if (row.lost) {
      ++lost;
    } else {
      ++tracked;
      tip_sq += row.tip_err_mm * row.tip_err_mm;
      axis_sq += row.axis_err_deg * row.axis_err_deg;
    }
    if (row.fused_source != FusedSource::kLost) {
      ++fused_defined;
      fused_tip_sq += row.fused_tip_err_mm * row.fused_tip_err_mm;
      fused_axis_sq += row.fused_axis_err_deg * row.fused_axis_err_deg;
    }
    if (row.fused_source == FusedSource::kBlending && previous != FusedSource::kBlending) {
      ++report.blending_runs;
    }
    previous = row.fused_source;
    report.max_coasting = std::max(report.max_coasting, row.coasting);
    report.rows.push_back(row);
  }

  report.lost_rate = static_cast<double>(lost) / frames;
  if (tracked > 0) {
    report.tip_rmse_mm = std::sqrt(tip_sq / tracked);
    report.axis_rmse_deg = std::sqrt(axis_sq / tracked);
  }
  if (fused_defined > 0) {
    report.fused_tip_rmse_mm = std::sqrt(fused_tip_sq / fused_defined);
    report.fused_axis_rmse_deg = std::sqrt(fused_axis_sq / fused_defined);
  }
  std::vector<double> totals;
  std::array<std::vector<double>, kTrackStageCount> stages;
  for (const BenchFrame& r : report.rows) {
    totals.push_back(r.total_us);
    for (std::size_t s = 0; s < kTrackStageCount; ++s) stages[s].push_back(r.stage_us[s]);
  }
  report.total = latency_stats(std::move(totals));
  for (std::size_t s = 0; s < kTrackStageCount; ++s) {
    report.stages[s] = latency_stats(std::move(stages[s]));
  }
  return report;
}

std::string bench_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "frame,tip_err_mm,axis_err_deg,lost,coasting,confidence,stage_times_us,"
         "total_us,fused_source,fused_tip_err_mm,fused_axis_err_deg\n";
  char buf[64];
  auto num = [&](double v, int decimals) {
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return std::string(buf);
  };
  for (const BenchFrame& r : report.rows) {
    out << r.frame << ',' << num(r.tip_err_mm, 4) << ',' << num(r.axis_err_deg, 4) << ','
        << (r.lost ? 1 : 0) << ',' << r.coasting << ',' << num(r.confidence, 4) << ',';
    for (std::size_t s = 0; s < kTrackStageCount; ++s) {
      if (s > 0) out << ';';
      out << num(r.stage_us[s], 1);
    }
    out << ',' << num(r.total_us, 1) << ',' << to_string(r.fused_source) << ','
        << num(r.fused_tip_err_mm, 4) << ',' << num(r.fused_axis_err_deg, 4) << '\n';
  }
  return out.str();
}

nlohmann::json bench_summary(const BenchReport& report) {
  nlohmann::json stages = nlohmann::json::object();
  for (std::size_t s = 0; s < kTrackStageCount; ++s) {
    stages[std::string(stage_name(static_cast<TrackStage>(s)))] = stats_json(report.stages[s]);
  }
  return {{"scenario", report.scenario},
          {"frames", report.frames},
          {"lost_rate", report.lost_rate},
          {"max_coasting", report.max_coasting},
          {"tip_rmse_mm", report.tip_rmse_mm},
          {"axis_rmse_deg", report.axis_rmse_deg},
          {"fused_tip_rmse_mm", report.fused_tip_rmse_mm},
          {"fused_axis_rmse_deg", report.fused_axis_rmse_deg},
          {"blending_runs", report.blending_runs},
          {"latency", stats_json(report.total)},
          {"stage_latency", std::move(stages)}};
}

}  // namespace vrnote
