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

#include <benchmark/benchmark.h>

#include <optional>

#include "vrnote/hybrid_tracker.hpp"
#include "vrnote/stylus_sim.hpp"
#include "vrnote/vision_tracker.hpp"

namespace vrnote {
namespace {

const SimConfig& sim() {
  static const SimConfig cfg;
  return cfg;
}

const SimFrame& write_frame() {
  static const SimFrame f = simulate_frame(make_scenario("write"), 40, sim());
  return f;
}

Correspondences matched() {
  const SimFrame& f = write_frame();
  return icp_match(segment_bright(f.stereo.left), segment_bright(f.stereo.right));
}

void BM_SegmentBright(benchmark::State& state) {
  const GrayImage& image = write_frame().stereo.left;
  for (auto _ : state) benchmark::DoNotOptimize(segment_bright(image));
}
BENCHMARK(BM_SegmentBright);

void BM_IcpMatch(benchmark::State& state) {
  const SimFrame& f = write_frame();
  const PixelSet left = segment_bright(f.stereo.left);
  const PixelSet right = segment_bright(f.stereo.right);
  for (auto _ : state) benchmark::DoNotOptimize(icp_match(left, right));
  state.counters["pixels"] = static_cast<double>(left.size());
}
BENCHMARK(BM_IcpMatch);

void BM_ReconstructAndFit(benchmark::State& state) {
  const Correspondences c = matched();
  for (auto _ : state) {
    const Reconstruction cloud = reconstruct(c, sim().rig);
    benchmark::DoNotOptimize(fit_axis_pca(cloud.points));
  }
}
BENCHMARK(BM_ReconstructAndFit);

void BM_KalmanStep(benchmark::State& state) {
  const KalmanConfig cfg;
  const StylusPose m = write_frame().stereo.truth;
  KalmanState s = kalman_init(m, cfg);
  for (auto _ : state) {
    s = kalman_step(s, m, cfg.frame_dt, cfg).state;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_KalmanStep);

void BM_TrackFrame(benchmark::State& state) {
  const SimScenario sc = make_scenario("write");
  const std::vector<SimFrame> frames = run_scenario(sc, 64, sim());
  VisionTracker tracker(sim().rig, sim().model);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tracker.track(frames[i++ % frames.size()].stereo));
  }
}
BENCHMARK(BM_TrackFrame);

void BM_HybridTrack(benchmark::State& state) {
  const std::vector<SimFrame> frames = run_scenario(make_scenario("lift"), 64, sim());
  HybridTracker tracker(sim().rig, sim().model);
  std::size_t i = 0;
  for (auto _ : state) {
    const SimFrame& f = frames[i++ % frames.size()];
    benchmark::DoNotOptimize(tracker.track(f.stereo, f.tablet));
  }
}
BENCHMARK(BM_HybridTrack);

void BM_RenderStereo(benchmark::State& state) {
  const SimScenario sc = make_scenario("write");
  int i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_frame(sc, i++, sim()));
}
BENCHMARK(BM_RenderStereo);

}  // namespace
}  // namespace vrnote
