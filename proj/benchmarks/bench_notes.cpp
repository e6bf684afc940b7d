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

#include "vrnote/document.hpp"
#include "vrnote/note_engine.hpp"
#include "vrnote/random.hpp"
#include "vrnote/session.hpp"

namespace vrnote {
namespace {

void use(NoteEngine& e, Tool tool) {
  for (int i = 0; i < kToolCount && e.tool() != tool; ++i) e.cycle_tool(CycleDirection::kForward);
}

// A page of `strokes` random strokes, 20 points each.
NoteEngine filled(int strokes) {
  NoteEngine e(3600);
  Rng rng(3);
  for (int s = 0; s < strokes; ++s) {
    e.slider_seek(rng.uniform(0, 3000));
    double x = rng.uniform(10, 200), y = rng.uniform(10, 287);
    e.begin_stroke(x, y);
    for (int i = 1; i < 20; ++i) e.append_point(x += rng.normal(0, 2), y += rng.normal(0, 2));
    e.end_stroke();
  }
  return e;
}

void BM_EraseAt(benchmark::State& state) {
  const NoteEngine base = filled(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    state.PauseTiming();
    NoteEngine e = base;
    use(e, Tool::kEraser);
    state.ResumeTiming();
    benchmark::DoNotOptimize(e.erase_at(105, 148, 20));
  }
}
BENCHMARK(BM_EraseAt)->Arg(50)->Arg(500);

void BM_KnifeSelect(benchmark::State& state) {
  NoteEngine e = filled(static_cast<int>(state.range(0)));
  use(e, Tool::kKnife);
  for (auto _ : state) benchmark::DoNotOptimize(e.knife_select({50, 50, 150, 200}));
}
BENCHMARK(BM_KnifeSelect)->Arg(50)->Arg(500);

void BM_ExportDocument(benchmark::State& state) {
  Session s(3600);
  std::int64_t seq = 0, wall = 0;
  Rng rng(8);
  for (int stroke = 0; stroke < state.range(0); ++stroke) {
    s.apply({++seq, wall += 10, "stroke-begin", {{"x_mm", rng.uniform(0, 200)}, {"y_mm", 50}}});
    for (int i = 0; i < 19; ++i) {
      s.apply({++seq, wall += 10, "stroke-point",
               {{"x_mm", rng.uniform(0, 200)}, {"y_mm", rng.uniform(0, 280)}}});
    }
    s.apply({++seq, wall += 10, "stroke-end", nlohmann::json::object()});
  }
  for (auto _ : state) benchmark::DoNotOptimize(s.export_document());
}
BENCHMARK(BM_ExportDocument)->Arg(20)->Arg(200);

void BM_ReplayDocument(benchmark::State& state) {
  Session s(3600);
  std::int64_t seq = 0, wall = 0;
  for (int stroke = 0; stroke < 50; ++stroke) {
    s.apply({++seq, wall += 10, "stroke-begin", {{"x_mm", 10 + stroke}, {"y_mm", 50}}});
    for (int i = 0; i < 19; ++i) {
      s.apply({++seq, wall += 10, "stroke-point", {{"x_mm", 10 + stroke}, {"y_mm", 50 + i}}});
    }
    s.apply({++seq, wall += 10, "stroke-end", nlohmann::json::object()});
  }
  const std::string doc = s.export_document();
  for (auto _ : state) benchmark::DoNotOptimize(replay_document(doc));
}
BENCHMARK(BM_ReplayDocument);

}  // namespace
}  // namespace vrnote
