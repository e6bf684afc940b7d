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


// Event scripts shared by the session, document and service tests.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrnote/random.hpp"
#include "vrnote/session.hpp"

namespace script {

using nlohmann::json;
using vrnote::SessionEvent;

class Builder {
 public:
  Builder& at(std::int64_t wall_ms) {
    wall_ = wall_ms;
    return *this;
  }
  Builder& add(const std::string& kind, json payload = json::object()) {
    events_.push_back({++seq_, wall_, kind, std::move(payload)});
    return *this;
  }
  std::vector<SessionEvent> build() const { return events_; }

 private:
  std::int64_t seq_ = 0;
  std::int64_t wall_ = 0;
  std::vector<SessionEvent> events_;
};

inline json pinch(double lx, double ly, double rx, double ry, double z = 0.5) {
  return {{"left_m", {lx, ly, z}}, {"right_m", {rx, ry, z}}};
}

/// A lecture that touches every event kind, including some rejections.
inline std::vector<SessionEvent> lecture() {
  Builder b;
  b.at(0).add("clock-play");
  b.at(1000).add("stroke-begin", {{"x_mm", 20.0}, {"y_mm", 30.0}, {"pressure", 0.5}});
  b.at(1020).add("stroke-point", {{"x_mm", 25.5}, {"y_mm", 31.25}});
  b.at(1040).add("stroke-point", {{"x_mm", 31.0}, {"y_mm", 33.0}});
  b.at(1060).add("stroke-end");
  b.at(2000).add("stroke-begin", {{"x_mm", 40.0}, {"y_mm", 60.0}});
  b.at(2020).add("stroke-point", {{"x_mm", 48.0}, {"y_mm", 66.0}});
  b.at(2040).add("stroke-point", {{"x_mm", 300.0}, {"y_mm", 66.0}});  // clamped
  b.at(2060).add("stroke-end");
  b.at(2100).add("erase", {{"x_mm", 25.0}, {"y_mm", 31.0}, {"radius_mm", 2.0}});  // wrong tool
  b.at(2200).add("tool-cycle", {{"direction", "forward"}});                         // eraser
  b.at(2300).add("erase", {{"x_mm", 25.5}, {"y_mm", 31.25}, {"radius_mm", 1.0}});
  b.at(2400).add("tool-cycle", {{"direction", "back"}});  // stylus
  b.at(2500).add("tool-cycle", {{"direction", "back"}});  // knife
  b.at(2600).add("knife-select",
                 {{"x_min_mm", 35.0}, {"y_min_mm", 55.0}, {"x_max_mm", 60.0}, {"y_max_mm", 70.0}});
  b.at(2700).add("move", {{"dx_mm", 10.0}, {"dy_mm", -5.0}});
  b.at(2800).add("review-seek", {{"stroke_ids", json::array()}});  // rejected
  b.at(2900).add("review-seek");
  b.at(3000).add("pinch-start", pinch(-0.1, -0.05, 0.1, 0.05));
  b.at(3100).add("pinch-move", pinch(-0.12, -0.05, 0.1, 0.06));
  b.at(3150).add("clock-play");  // held by the capture
  b.at(3200).add("unpinch");
  b.at(3300).add("tool-cycle", {{"direction", "back"}});  // glue
  b.at(3400).add("glue-sketch", {{"points_mm", {{10.0, 100.0}, {80.0, 140.0}, {40.0, 120.0}}}});
  b.at(3500).add("swipe", {{"direction", "left"}});
  b.at(3600).add("swipe", {{"direction", "right"}});
  b.at(3700).add("swipe", {{"direction", "right"}});  // already first page
  b.at(3800).add("slider-seek", {{"t_s", 12.5}});
  b.at(3900).add("clock-pause");
  b.at(4000).add("reference-lookup", {{"query", "kalman"}});
  b.at(4100).add("tool-cycle", {{"direction", "back"}});  // marker
  b.at(4200).add("marker-select",
                 {{"x_min_mm", 0.0}, {"y_min_mm", 0.0}, {"x_max_mm", 210.0}, {"y_max_mm", 297.0}});
  b.at(4300).add("stroke-begin", {{"x_mm", 100.0}, {"y_mm", 200.0}});
  b.at(4320).add("stroke-end");
  b.at(4400).add("juggle");
  return b.build();
}

/// Random but mostly plausible event stream.
inline std::vector<SessionEvent> random_events(std::uint64_t seed, int count) {
  vrnote::Rng rng(seed);
  static const std::vector<std::string> kinds = {
      "stroke-begin", "stroke-point", "stroke-point", "stroke-point", "stroke-end",
      "tool-cycle",   "erase",        "knife-select", "move",         "marker-select",
      "review-seek",  "slider-seek",  "swipe",        "pinch-start",  "pinch-move",
      "unpinch",      "glue-sketch",  "clock-play",   "clock-pause",  "capture-cancel"};
  Builder b;
  std::int64_t wall = 0;
  for (int i = 0; i < count; ++i) {
    wall += static_cast<std::int64_t>(rng.uniform(0, 400));
    b.at(wall);
    const std::string& kind = kinds[static_cast<std::size_t>(rng.uniform(0, kinds.size()))];
    const double x = rng.uniform(-10, 220), y = rng.uniform(-10, 310);
    json p = json::object();
    if (kind == "stroke-begin" || kind == "stroke-point") {
      p = {{"x_mm", x}, {"y_mm", y}};
      if (rng.uniform() < 0.3) p["pressure"] = rng.uniform();
    } else if (kind == "tool-cycle") {
      p = {{"direction", rng.uniform() < 0.7 ? "forward" : "back"}};
    } else if (kind == "erase") {
      p = {{"x_mm", x}, {"y_mm", y}, {"radius_mm", rng.uniform(1, 40)}};
    } else if (kind == "knife-select" || kind == "marker-select") {
      p = {{"x_min_mm", x}, {"y_min_mm", y}, {"x_max_mm", x + rng.uniform(0, 100)},
           {"y_max_mm", y + rng.uniform(0, 100)}};
    } else if (kind == "move") {
      p = {{"dx_mm", rng.normal(0, 30)}, {"dy_mm", rng.normal(0, 30)}};
    } else if (kind == "slider-seek") {
      p = {{"t_s", rng.uniform(-10, 700)}};
    } else if (kind == "swipe") {
      p = {{"direction", rng.uniform() < 0.6 ? "left" : "right"}};
    } else if (kind == "pinch-start" || kind == "pinch-move" ||
               (kind == "unpinch" && rng.uniform() < 0.5)) {
      p = pinch(rng.uniform(-0.2, 0.0), rng.uniform(-0.1, 0.0), rng.uniform(0.0, 0.2),
                rng.uniform(0.0, 0.1), rng.uniform(0.3, 0.7));
    } else if (kind == "glue-sketch") {
      p = {{"points_mm", {{x, y}, {x + rng.uniform(0, 60), y + rng.uniform(0, 60)}}}};
    }
    b.add(kind, p);
  }
  return b.build();
}

}  // namespace script
