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


#include "vrnote/document.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string_view>
#include <utility>

#include "vrnote/error.hpp"

namespace vrnote {
namespace {

using nlohmann::json;

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

int decimals_for(std::string_view key) {
  return ends_with(key, "_mm") || ends_with(key, "_s") ? 3 : 6;
}

void write_float(std::string& out, double value, int decimals) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument, "document holds a non-finite number");
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string_view text(buf);
  if (text.front() == '-' && text.find_first_not_of("-0.") == std::string_view::npos) {
    text.remove_prefix(1);
  }
  out += text;
}

void write_value(std::string& out, const json& v, std::string_view key, int depth) {
  const std::string indent(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_indent(static_cast<std::size_t>(2 * depth), ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += indent;
        out += json(it.key()).dump();
        out += ": ";
        write_value(out, it.value(), it.key(), depth + 1);
      }
      out += "\n" + close_indent + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const json& item : v) {
        if (!first) out += ",\n";
        first = false;
        out += indent;
        write_value(out, item, key, depth + 1);
      }
      out += "\n" + close_indent + "]";
      return;
    }
    case json::value_t::number_float:
      write_float(out, v.get<double>(), decimals_for(key));
      return;
    default:
      out += v.dump();
      return;
  }
}

/// Field access that reports the JSON path of whatever is wrong.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kMalformedDocument, path_ + ": " + what);
  }

  Reader at(const std::string& key) const {
    if (!j_.is_object()) fail("expected an object");
    auto it = j_.find(key);
    if (it == j_.end()) Reader(j_, path_ + "." + key).fail("missing");
    return Reader(*it, path_ + "." + key);
  }
  bool has(const std::string& key) const {
    return j_.is_object() && j_.contains(key) && !j_.at(key).is_null();
  }
  Reader at(std::size_t index) const {
    return Reader(j_.at(index), path_ + "[" + std::to_string(index) + "]");
  }
  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }

  double number() const {
    if (!j_.is_number()) fail("expected a number");
    const double v = j_.get<double>();
    if (!std::isfinite(v)) fail("not finite");
    return v;
  }
  std::int64_t integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<std::int64_t>();
  }
  bool boolean() const {
    if (!j_.is_boolean()) fail("expected a boolean");
    return j_.get<bool>();
  }
  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  Vec3 vec3() const {
    if (size() != 3) fail("expected 3 numbers");
    return {at(std::size_t{0}).number(), at(1).number(), at(2).number()};
  }

 private:
  const json& j_;
  std::string path_;
};

json vec3_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json point_json(const NotePoint& p) {
  json j{{"x_mm", p.x_mm}, {"y_mm", p.y_mm}, {"t_lecture_s", p.t_lecture_s},
         {"t_wall_ms", p.t_wall_ms}};
  if (p.pressure) j["pressure"] = *p.pressure;
  return j;
}

json rect_mm_json(const RectMm& r) {
  return {{"x_min_mm", r.x_min}, {"y_min_mm", r.y_min}, {"x_max_mm", r.x_max},
          {"y_max_mm", r.y_max}};
}

json capture_rect_json(const CaptureRect& r) {
  return {{"u_min_m", r.u_min}, {"v_min_m", r.v_min}, {"u_max_m", r.u_max},
          {"v_max_m", r.v_max}};
}

json ids_json(const std::vector<EntityId>& ids) {
  json a = json::array();
  for (EntityId id : ids) a.push_back(id);
  return a;
}

NotePoint read_point(const Reader& r) {
  NotePoint p;
  p.x_mm = r.at("x_mm").number();
  p.y_mm = r.at("y_mm").number();
  p.t_lecture_s = r.at("t_lecture_s").number();
  p.t_wall_ms = r.at("t_wall_ms").integer();
  if (r.has("pressure")) p.pressure = r.at("pressure").number();
  return p;
}

EntityId read_id(const Reader& r) {
  const std::int64_t id = r.integer();
  if (id < 1) r.fail("ids start at 1");
  return static_cast<EntityId>(id);
}

Stroke read_stroke(const Reader& r) {
  Stroke s;
  s.id = read_id(r.at("id"));
  try {
    s.tool = parse_ink_tool(r.at("tool").string());
  } catch (const Error& e) {
    r.at("tool").fail(e.what());
  }
  s.width_mm = r.at("width_mm").number();
  s.page_index = static_cast<int>(r.at("page_index").integer());
  const Reader points = r.at("points");
  for (std::size_t i = 0; i < points.size(); ++i) s.points.push_back(read_point(points.at(i)));
  if (s.points.empty()) points.fail("a stroke needs at least one point");
  return s;
}

RectMm read_rect_mm(const Reader& r) {
  return {r.at("x_min_mm").number(), r.at("y_min_mm").number(),
          r.at("x_max_mm").number(), r.at("y_max_mm").number()};
}

CaptureRect read_capture_rect(const Reader& r) {
  return {r.at("u_min_m").number(), r.at("v_min_m").number(),
          r.at("u_max_m").number(), r.at("v_max_m").number()};
}

Picture read_picture(const Reader& r) {
  Picture p;
  p.id = read_id(r.at("id"));
  p.crop = read_capture_rect(r.at("crop"));
  p.bbox_mm = read_rect_mm(r.at("bbox_mm"));
  p.t_lecture_s = r.at("t_lecture_s").number();
  return p;
}

std::vector<EntityId> read_ids(const Reader& r) {
  std::vector<EntityId> ids;
  for (std::size_t i = 0; i < r.size(); ++i) ids.push_back(read_id(r.at(i)));
  if (!std::is_sorted(ids.begin(), ids.end())) r.fail("ids must be sorted");
  return ids;
}

json slide_json(const Slide& s) {
  return {{"center_m", vec3_json(s.center)}, {"u_axis", vec3_json(s.u_axis)},
          {"v_axis", vec3_json(s.v_axis)}, {"width_m", s.width},
          {"height_m", s.height}};
}

Slide read_slide(const Reader& r) {
  Slide s;
  s.center = r.at("center_m").vec3();
  s.u_axis = r.at("u_axis").vec3();
  s.v_axis = r.at("v_axis").vec3();
  s.width = r.at("width_m").number();
  s.height = r.at("height_m").number();
  return s;
}

}  // namespace

std::string canonical_dump(const json& value) {
  std::string out;
  write_value(out, value, "", 0);
  out += "\n";
  return out;
}

json parse_document_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedDocument,
                "byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json canonicalize(const json& value) { return json::parse(canonical_dump(value)); }

json stroke_to_json(const Stroke& s) {
  json points = json::array();
  for (const NotePoint& p : s.points) points.push_back(point_json(p));
  return {{"id", s.id}, {"tool", std::string(to_string(s.tool))},
          {"width_mm", s.width_mm}, {"page_index", s.page_index},
          {"points", std::move(points)}};
}

json picture_to_json(const Picture& p) {
  return {{"id", p.id}, {"crop", capture_rect_json(p.crop)},
          {"bbox_mm", rect_mm_json(p.bbox_mm)}, {"t_lecture_s", p.t_lecture_s}};
}

json page_to_json(const Page& page) {
  json strokes = json::array();
  for (const Stroke& s : page.strokes) strokes.push_back(stroke_to_json(s));
  json pictures = json::array();
  for (const Picture& p : page.pictures) pictures.push_back(picture_to_json(p));
  return {{"strokes", std::move(strokes)}, {"pictures", std::move(pictures)}};
}

json pinch_to_json(const PinchPair& pinch) {
  return {{"left_m", vec3_json(pinch.left_pinch)},
          {"right_m", vec3_json(pinch.right_pinch)},
          {"head",
           {{"eye_m", vec3_json(pinch.head.eye)},
            {"forward", vec3_json(pinch.head.forward)},
            {"up", vec3_json(pinch.head.up)},
            {"right", vec3_json(pinch.head.right)}}}};
}

PinchPair pinch_from_json(const json& j, const std::string& where) {
  const Reader r(j, where);
  PinchPair p;
  p.left_pinch = r.at("left_m").vec3();
  p.right_pinch = r.at("right_m").vec3();
  if (r.has("head")) {
    const Reader head = r.at("head");
    p.head.eye = head.at("eye_m").vec3();
    p.head.forward = head.at("forward").vec3();
    p.head.up = head.at("up").vec3();
    p.head.right = head.at("right").vec3();
  }
  return p;
}

json to_json(const NoteState& state) {
  const NoteConfig& cfg = state.config;
  json pages = json::array();
  for (const Page& page : state.notebook.pages) pages.push_back(page_to_json(page));

  const PinchSession& gesture = state.capture.gesture;
  json capture{{"phase", std::string(to_string(gesture.phase()))},
               {"resume_playing", state.capture.resume_playing},
               {"t_lecture_s", state.capture.t_lecture_s},
               {"pinch", nullptr},
               {"rect", nullptr}};
  if (gesture.last_pinch()) capture["pinch"] = pinch_to_json(*gesture.last_pinch());
  if (gesture.rect()) capture["rect"] = capture_rect_json(*gesture.rect());

  return {
      {"version", kDocumentVersion},
      {"lecture", {{"duration_s", state.clock.duration_s()}}},
      {"config",
       {{"page_width_mm", cfg.page_width_mm},
        {"page_height_mm", cfg.page_height_mm},
        {"stroke_width_mm", cfg.stroke_width_mm},
        {"marker_width_mm", cfg.marker_width_mm},
        {"swipe_left_is_next", cfg.swipe_left_is_next},
        {"slide", slide_json(cfg.slide)}}},
      {"clock",
       {{"playing", state.clock.playing},
        {"position_s", state.clock.position_s()},
        {"anchor_wall_ms", state.clock.anchor_wall_ms}}},
      {"tool", std::string(to_string(state.tool))},
      {"current_page", state.notebook.current_page},
      {"next_id", state.next_id},
      {"selection",
       {{"stroke_ids", ids_json(state.selection.stroke_ids)},
        {"picture_ids", ids_json(state.selection.picture_ids)}}},
      {"active_stroke",
       state.active_stroke ? stroke_to_json(*state.active_stroke) : json(nullptr)},
      {"capture", std::move(capture)},
      {"pages", std::move(pages)},
  };
}

NoteState note_state_from_json(const json& doc) {
  const Reader root(doc, "$");
  if (!doc.is_object()) root.fail("expected an object");
  const std::int64_t version = root.at("version").integer();
  if (version != kDocumentVersion) {
    throw Error(ErrorCode::kUnknownVersion, std::to_string(version));
  }

  NoteState state;
  const Reader cfg = root.at("config");
  state.config.page_width_mm = cfg.at("page_width_mm").number();
  state.config.page_height_mm = cfg.at("page_height_mm").number();
  state.config.stroke_width_mm = cfg.at("stroke_width_mm").number();
  state.config.marker_width_mm = cfg.at("marker_width_mm").number();
  state.config.swipe_left_is_next = cfg.at("swipe_left_is_next").boolean();
  state.config.slide = read_slide(cfg.at("slide"));
  try {
    state.config.validate();
  } catch (const Error& e) {
    cfg.fail(e.what());
  }

  const Reader clock = root.at("clock");
  state.clock.duration_ms =
      static_cast<std::int64_t>(std::llround(root.at("lecture").at("duration_s").number() * 1000.0));
  state.clock.playing = clock.at("playing").boolean();
  state.clock.position_ms =
      static_cast<std::int64_t>(std::llround(clock.at("position_s").number() * 1000.0));
  state.clock.anchor_wall_ms = clock.at("anchor_wall_ms").integer();
  if (state.clock.duration_ms < 0 || state.clock.position_ms < 0 ||
      state.clock.position_ms > state.clock.duration_ms) {
    clock.fail("position outside the lecture");
  }

  try {
    state.tool = parse_tool(root.at("tool").string());
  } catch (const Error& e) {
    root.at("tool").fail(e.what());
  }
  const std::int64_t next_id = root.at("next_id").integer();
  if (next_id < 1) root.at("next_id").fail("must be >= 1");
  state.next_id = static_cast<EntityId>(next_id);

  const Reader pages = root.at("pages");
  state.notebook.pages.clear();
  for (std::size_t i = 0; i < pages.size(); ++i) {
    const Reader page = pages.at(i);
    Page p;
    const Reader strokes = page.at("strokes");
    for (std::size_t k = 0; k < strokes.size(); ++k) {
      Stroke s = read_stroke(strokes.at(k));
      if (s.page_index != static_cast<int>(i)) strokes.at(k).fail("page_index mismatch");
      p.strokes.push_back(std::move(s));
    }
    const Reader pictures = page.at("pictures");
    for (std::size_t k = 0; k < pictures.size(); ++k) {
      p.pictures.push_back(read_picture(pictures.at(k)));
    }
    state.notebook.pages.push_back(std::move(p));
  }
  if (state.notebook.pages.empty()) pages.fail("a notebook needs at least one page");
  const std::int64_t current = root.at("current_page").integer();
  if (current < 0 || current >= static_cast<std::int64_t>(state.notebook.pages.size())) {
    root.at("current_page").fail("out of range");
  }
  state.notebook.current_page = static_cast<int>(current);

  const Reader selection = root.at("selection");
  state.selection.stroke_ids = read_ids(selection.at("stroke_ids"));
  state.selection.picture_ids = read_ids(selection.at("picture_ids"));
  if (root.has("active_stroke")) {
    const Reader active = root.at("active_stroke");
    Stroke s;
    s.id = 0;
    try {
      s.tool = parse_ink_tool(active.at("tool").string());
    } catch (const Error& e) {
      active.at("tool").fail(e.what());
    }
    s.width_mm = active.at("width_mm").number();
    s.page_index = static_cast<int>(active.at("page_index").integer());
    const Reader points = active.at("points");
    for (std::size_t i = 0; i < points.size(); ++i) s.points.push_back(read_point(points.at(i)));
    if (s.points.empty()) points.fail("a stroke needs at least one point");
    state.active_stroke = std::move(s);
  }

  const Reader capture = root.at("capture");
  PinchSession::Phase phase;
  try {
    phase = parse_pinch_phase(capture.at("phase").string());
  } catch (const Error& e) {
    capture.at("phase").fail(e.what());
  }
  std::optional<PinchPair> pinch;
  std::optional<CaptureRect> rect;
  if (capture.has("pinch")) pinch = pinch_from_json(capture.at("pinch").raw(), capture.path() + ".pinch");
  if (capture.has("rect")) rect = read_capture_rect(capture.at("rect"));
  try {
    state.capture.gesture = PinchSession::restore(state.config.slide, phase, pinch, rect);
  } catch (const Error& e) {
    capture.fail(e.what());
  }
  state.capture.resume_playing = capture.at("resume_playing").boolean();
  state.capture.t_lecture_s = capture.at("t_lecture_s").number();
  return state;
}

std::string serialize(const NoteState& state, const json& events) {
  json doc = to_json(state);
  doc["events"] = events.is_null() ? json::array() : events;
  return canonical_dump(doc);
}

SessionDocument deserialize(const std::string& text) {
  const json doc = parse_document_text(text);
  SessionDocument out;
  out.state = note_state_from_json(doc);
  const Reader root(doc, "$");
  const Reader events = root.at("events");
  events.size();  // must be an array
  out.events = events.raw();
  return out;
}

}  // namespace vrnote
