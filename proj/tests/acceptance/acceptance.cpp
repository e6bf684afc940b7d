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


// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "session_script.hpp"
#include "vrnote/bench.hpp"
#include "vrnote/document.hpp"
#include "vrnote/error.hpp"
#include "vrnote/gesture_mapper.hpp"
#include "vrnote/hybrid_tracker.hpp"
#include "vrnote/note_engine.hpp"
#include "vrnote/random.hpp"
#include "vrnote/session.hpp"
#include "vrnote/vision_tracker.hpp"

namespace vrnote {
namespace {

constexpr double kDegree = M_PI / 180.0;

struct Verdict {
  bool pass = true;
  std::string detail;
};

Verdict fail(std::string why) { return {false, std::move(why)}; }

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

// 1. Per-frame latency on the write scenario.
Verdict latency() {
  const BenchReport r = bench_tracking("write", 1000);
  const double p50_ms = r.total.p50_us / 1000.0, p99_ms = r.total.p99_us / 1000.0;
  Verdict v{p50_ms <= 14.0 && p99_ms <= 20.0, fmt("median %.3f ms, p99 %.3f ms", p50_ms, p99_ms)};
  return v;
}

// 2. Segmentation equals a brute-force scan.
Verdict segmentation() {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int w = 1 + static_cast<int>(rng.uniform(0, 128));
    const int h = 1 + static_cast<int>(rng.uniform(0, 64));
    const double bright = rng.uniform();
    GrayImage image(w, h);
    for (auto& p : image.pixels()) {
      p = rng.uniform() < bright ? static_cast<std::uint8_t>(rng.uniform(240, 256))
                                 : static_cast<std::uint8_t>(rng.uniform(0, 256));
    }
    const int threshold = trial % 2 ? 250 : static_cast<int>(rng.uniform(0, 255));
    const PixelSet got = segment_bright(image, threshold);
    const auto want = oracle::bright_pixels(image, threshold);
    if (got.size() != want.size()) return fail(fmt("trial %d: size mismatch", trial));
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].u != want[i].u || got[i].v != want[i].v ||
          static_cast<int>(got[i].intensity) != want[i].value) {
        return fail(fmt("trial %d: pixel %zu differs", trial, i));
      }
    }
  }
  return {true, "1000 random images identical"};
}

// 3. ICP recovers a synthetic disparity.
Verdict icp() {
  Rng rng(31);
  int within = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 20 + static_cast<int>(rng.uniform(0, 481));
    const double shift = rng.uniform(1, 40), jitter = rng.uniform(0, 0.3);
    PixelSet left, right;
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform(200, 400), v = rng.uniform(60, 180);
      left.push_back({u, v, 255});
      right.push_back({u - shift + rng.normal(0, jitter), v + rng.normal(0, jitter), 255});
    }
    try {
      if (std::abs(icp_match(left, right).mean_disparity - shift) <= 0.5) ++within;
    } catch (const Error&) {
    }
  }
  return {within >= 990, fmt("%d/1000 within 0.5 px", within)};
}

// 4. Tracking accuracy on write, robustness on shake.
Verdict tracking() {
  const BenchReport w = bench_tracking("write", 1000);
  std::string detail = fmt("write tip %.2f mm, axis %.2f deg, lost %.3f", w.tip_rmse_mm,
                           w.axis_rmse_deg, w.lost_rate);
  bool ok = w.tip_rmse_mm <= 5.0 && w.axis_rmse_deg <= 5.0 && w.lost_rate == 0.0;

  const SimConfig sim;
  const SimScenario sc = make_scenario("shake");
  VisionTracker tracker(sim.rig, sim.model);
  int lost = 0, max_coast = 0, unflagged = 0;
  try {
    for (int i = 0; i < 1000; ++i) {
      const TrackResult r = tracker.track(simulate_frame(sc, i, sim).stereo);
      const bool measured = r.diagnostics.measurement.has_value();
      // Frames without a measurement must be flagged lost (coasting or not).
      if (!measured && !r.lost) ++unflagged;
      if (r.lost) {
        ++lost;
        if (r.confidence != 0.0) ++unflagged;
        max_coast = std::max(max_coast, r.diagnostics.coasting_frames);
      }
    }
  } catch (const std::exception& e) {
    return fail(std::string("shake threw: ") + e.what());
  }
  ok = ok && lost > 0 && unflagged == 0 && max_coast <= 7;
  detail += fmt("; shake lost %d/1000, max coast %d, unflagged %d", lost, max_coast, unflagged);
  return {ok, detail};
}

// 5. Tablet-to-vision handoff on lift with sources 2 mm apart.
Verdict handoff() {
  SimConfig sim;
  sim.tablet_noise_sigma = 0.0;
  const SimScenario sc = make_scenario("lift");
  const Vec3 offset(0.002, 0.0, 0.0);
  BlendState state;
  std::optional<Vec3> prev_out, prev_truth;
  double worst_excess = -1e9;
  std::vector<FusedSource> sources;
  for (int i = 0; i < 150; ++i) {
    const SimFrame f = simulate_frame(sc, i, sim);
    TrackResult vision;
    vision.lost = false;
    vision.confidence = 1.0;
    vision.pose = {f.stereo.truth.tip + offset, f.stereo.truth.axis};
    const FusedPose out = fuse(f.tablet, vision, state);
    sources.push_back(out.source);
    if (prev_out) {
      const double step = (out.pose.tip - *prev_out).norm();
      const double truth_step = (f.stereo.truth.tip - *prev_truth).norm();
      worst_excess = std::max(worst_excess, step - truth_step);
    }
    prev_out = out.pose.tip;
    prev_truth = f.stereo.truth.tip;
  }
  auto runs_of = [](const std::vector<FusedSource>& s, int& longest) {
    int runs = 0, len = 0;
    longest = 0;
    for (FusedSource x : s) {
      if (x == FusedSource::kBlending) {
        if (len == 0) ++runs;
        longest = std::max(longest, ++len);
      } else {
        len = 0;
      }
    }
    return runs;
  };
  int longest = 0;
  const int runs = runs_of(sources, longest);

  // Full pipeline on the same scenario.
  const SimConfig full;
  HybridTracker hybrid(full.rig, full.model);
  std::vector<FusedSource> live;
  for (int i = 0; i < 150; ++i) {
    const SimFrame f = simulate_frame(sc, i, full);
    live.push_back(hybrid.track(f.stereo, f.tablet).fused.source);
  }
  int live_longest = 0;
  const int live_runs = runs_of(live, live_longest);

  const bool ok = worst_excess <= 0.0005 && runs == 1 && longest == 5 && live_runs == 1 &&
                  live_longest == 5;
  return {ok, fmt("max step excess %.3f mm, blend runs %d (len %d), pipeline runs %d (len %d)",
                  worst_excess * 1000.0, runs, longest, live_runs, live_longest)};
}

// 6. Kalman smoothing of a stationary stylus.
Verdict smoothing() {
  const KalmanConfig cfg;
  const Vec3 truth(0.0, 0.05, 0.01);
  int reduced = 0;
  const int seeds = 30;
  double worst_ratio = 0.0;
  for (int seed = 1; seed <= seeds; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    std::vector<double> in[3], out[3];
    std::optional<KalmanState> s;
    for (int i = 0; i < 500; ++i) {
      const StylusPose m{truth + Vec3(rng.normal(0, 0.002), rng.normal(0, 0.002),
                                      rng.normal(0, 0.002)),
                         Vec3::UnitZ()};
      s = s ? kalman_step(*s, m, cfg.frame_dt, cfg).state : kalman_init(m, cfg);
      for (int k = 0; k < 3; ++k) {
        in[k].push_back(m.tip(k));
        out[k].push_back(s->tip()(k));
      }
    }
    bool all = true;
    for (int k = 0; k < 3; ++k) {
      const double ratio = oracle::stddev(out[k]) / oracle::stddev(in[k]);
      worst_ratio = std::max(worst_ratio, ratio);
      all = all && ratio < 1.0;
    }
    if (all) ++reduced;
  }
  return {reduced == seeds, fmt("%d/%d seeds reduced, worst std ratio %.3f", reduced, seeds,
                                worst_ratio)};
}

// 7. Note engine invariants.
void use(NoteEngine& e, Tool tool) {
  for (int i = 0; i < kToolCount && e.tool() != tool; ++i) e.cycle_tool(CycleDirection::kForward);
}

void random_page(NoteEngine& e, Rng& rng, int strokes) {
  use(e, Tool::kStylus);
  for (int s = 0; s < strokes; ++s) {
    e.slider_seek(rng.uniform(0, 3000));
    double x = rng.uniform(0, 210), y = rng.uniform(0, 297);
    e.begin_stroke(x, y);
    const int n = 1 + static_cast<int>(rng.uniform(0, 30));
    for (int i = 1; i < n; ++i) e.append_point(x += rng.normal(0, 4), y += rng.normal(0, 4));
    e.end_stroke();
  }
}

std::optional<std::string> timestamps_immutable() {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Session s(3600);
    std::map<std::int64_t, double> stamp;  // wall -> lecture
    for (const SessionEvent& e : script::random_events(seed, 300)) {
      s.apply(e);
      for (const Page& page : s.state().notebook.pages) {
        for (const Stroke& st : page.strokes) {
          for (const NotePoint& p : st.points) {
            // Wall times are strictly increasing across point events here,
            // so the wall stamp identifies the point.
            auto [it, fresh] = stamp.emplace(p.t_wall_ms, p.t_lecture_s);
            if (!fresh && it->second != p.t_lecture_s) {
              return fmt("seed %llu: point at wall %lld changed lecture time",
                         static_cast<unsigned long long>(seed),
                         static_cast<long long>(p.t_wall_ms));
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> erase_oracle() {
  Rng rng(4242);
  for (int trial = 0; trial < 1000; ++trial) {
    NoteEngine e(3600);
    random_page(e, rng, 1 + static_cast<int>(rng.uniform(0, 12)));
    const std::vector<Stroke> before = e.notebook().pages[0].strokes;
    const double cx = rng.uniform(0, 210), cy = rng.uniform(0, 297), r = rng.uniform(0.5, 60);
    use(e, Tool::kEraser);
    e.erase_at(cx, cy, r);
    const auto want = oracle::erase_runs(before, cx, cy, r);
    const auto& got = e.notebook().pages[0].strokes;
    if (got.size() != want.size()) return fmt("notebook %d: stroke count", trial);
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].points != want[i]) return fmt("notebook %d: stroke %zu", trial, i);
    }
  }
  return std::nullopt;
}

std::optional<std::string> review_seek_min() {
  Rng rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    NoteEngine e(3600);
    random_page(e, rng, 1 + static_cast<int>(rng.uniform(0, 15)));
    Selection sel;
    double want = INFINITY;
    for (const Stroke& s : e.notebook().pages[0].strokes) {
      if (sel.stroke_ids.empty() || rng.uniform() < 0.5) {
        sel.stroke_ids.push_back(s.id);
        want = std::min(want, s.t_start());
      }
    }
    std::sort(sel.stroke_ids.begin(), sel.stroke_ids.end());
    const double got = e.review_seek(sel);
    if (got != want || e.clock().position_s() != want || !e.clock().playing) {
      return fmt("trial %d: seek %.3f, want %.3f", trial, got, want);
    }
  }
  return std::nullopt;
}

std::optional<std::string> round_trip_and_replay() {
  std::vector<Session> sessions;
  Session lecture(3600);
  for (const SessionEvent& e : script::lecture()) lecture.apply(e);
  sessions.push_back(std::move(lecture));
  for (std::uint64_t seed = 500; seed < 550; ++seed) {
    Session s(3600);
    for (const SessionEvent& e : script::random_events(seed, 250)) s.apply(e);
    sessions.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    const std::string doc = sessions[i].export_document();
    const NoteState back = note_state_from_json(nlohmann::json::parse(doc));
    if (canonical_dump(to_json(back)) != canonical_dump(to_json(sessions[i].state()))) {
      return fmt("session %zu: state round trip differs", i);
    }
    const ReplayResult r = replay_document(doc);
    if (!r.consistent) return fmt("session %zu: replay diverged (%s)", i, r.detail.c_str());
    if (r.session.export_document() != doc) return fmt("session %zu: export not identical", i);
  }
  return std::nullopt;
}

Verdict note_invariants() {
  const std::pair<const char*, std::function<std::optional<std::string>()>> checks[] = {
      {"timestamps", timestamps_immutable},
      {"erase", erase_oracle},
      {"review-seek", review_seek_min},
      {"round trip/replay", round_trip_and_replay},
  };
  for (const auto& [name, check] : checks) {
    if (auto err = check()) return fail(std::string(name) + ": " + *err);
  }
  return {true, "timestamps, erase x1000, review-seek, round trip, replay all hold"};
}

// 8. Pinch to slide rectangle.
Verdict pinch() {
  PinchPair desk;
  desk.left_pinch = Vec3(-0.1, -0.05, 0.5);
  desk.right_pinch = Vec3(0.1, 0.05, 0.5);
  const CaptureRect r = pinch_to_rect(desk);
  const double desk_err = std::max({std::abs(r.u_min + 0.4), std::abs(r.v_min + 0.2),
                                    std::abs(r.u_max - 0.4), std::abs(r.v_max - 0.2)});

  Rng rng(99);
  int checked = 0;
  double worst = 0.0;
  while (checked < 1000) {
    PinchPair p;
    const double yaw = rng.uniform(-0.25, 0.25), pitch = rng.uniform(-0.2, 0.2);
    HeadPose& h = p.head;
    h.eye = Vec3(rng.uniform(-0.3, 0.3), rng.uniform(-0.2, 0.2), rng.uniform(-0.3, 0.3));
    h.forward = Vec3(std::sin(yaw) * std::cos(pitch), std::sin(pitch),
                     std::cos(yaw) * std::cos(pitch));
    h.right = Vec3::UnitY().cross(h.forward).normalized();
    h.up = h.forward.cross(h.right);
    const double depth = rng.uniform(0.3, 0.7);
    p.left_pinch = h.eye + depth * h.forward + rng.uniform(-0.25, 0) * h.right +
                   rng.uniform(-0.15, 0) * h.up;
    p.right_pinch = h.eye + depth * h.forward + rng.uniform(0, 0.25) * h.right +
                    rng.uniform(0, 0.15) * h.up;
    CaptureRect base;
    try {
      base = pinch_to_rect(p);
    } catch (const Error&) {
      continue;
    }
    ++checked;
    PinchPair scaled = p;
    const double k = rng.uniform(0.5, 3.0);
    scaled.left_pinch = h.eye + k * (p.left_pinch - h.eye);
    scaled.right_pinch = h.eye + k * (p.right_pinch - h.eye);
    const CaptureRect s = pinch_to_rect(scaled);
    worst = std::max({worst, std::abs(s.u_min - base.u_min), std::abs(s.v_min - base.v_min),
                      std::abs(s.u_max - base.u_max), std::abs(s.v_max - base.v_max)});
  }
  return {desk_err <= 1e-9 && worst <= 1e-9,
          fmt("desk error %.2e, scale invariance worst %.2e over 1000 pairs", desk_err, worst)};
}

// 9. Character size from a selection.
Verdict diagonal() {
  auto stroke = [](std::vector<std::pair<double, double>> pts) {
    Stroke s;
    for (auto [x, y] : pts) s.points.push_back({x, y});
    return s;
  };
  const Stroke a = stroke({{10, 10}, {40, 50}});
  const Stroke b = stroke({{20, 20}, {30, 30}});
  const double d1 = character_diagonal(std::vector<const Stroke*>{&a});
  const double d2 = character_diagonal(std::vector<const Stroke*>{&b});
  const bool ok = std::abs(d1 - 5.0) <= 1e-9 && std::abs(d2 - std::sqrt(2.0)) <= 1e-9;
  return {ok, fmt("3x4 cm -> %.9f cm, 1x1 cm -> %.9f cm", d1, d2)};
}

}  // namespace
}  // namespace vrnote

int main() {
  using vrnote::Verdict;
  const std::pair<const char*, Verdict (*)()> criteria[] = {
      {"1 latency", vrnote::latency},
      {"2 segmentation", vrnote::segmentation},
      {"3 icp", vrnote::icp},
      {"4 tracking", vrnote::tracking},
      {"5 handoff", vrnote::handoff},
      {"6 smoothing", vrnote::smoothing},
      {"7 note invariants", vrnote::note_invariants},
      {"8 pinch", vrnote::pinch},
      {"9 character size", vrnote::diagonal},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s criterion %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
