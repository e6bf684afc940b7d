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


#include "vrnote/session.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "vrnote/error.hpp"

namespace vrnote {
namespace {

using nlohmann::json;

[[noreturn]] void bad_payload(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "payload." + key + " " + what);
}

double number(const json& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) bad_payload(key, "is missing");
  if (!it->is_number()) bad_payload(key, "must be a number");
  return it->get<double>();
}

std::optional<double> optional_number(const json& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) bad_payload(key, "must be a number");
  return it->get<double>();
}

std::string text(const json& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) bad_payload(key, "is missing");
  if (!it->is_string()) bad_payload(key, "must be a string");
  return it->get<std::string>();
}

RectMm region(const json& p) {
  return {number(p, "x_min_mm"), number(p, "y_min_mm"), number(p, "x_max_mm"),
          number(p, "y_max_mm")};
}

std::vector<EntityId> id_list(const json& p, const std::string& key) {
  const json& a = p.at(key);
  if (!a.is_array()) bad_payload(key, "must be an array");
  std::vector<EntityId> ids;
  for (const json& v : a) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
      bad_payload(key, "must hold positive integer ids");
    }
    ids.push_back(v.get<EntityId>());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

json rect_result(const CaptureRect& r) {
  return {{"u_min_m", r.u_min}, {"v_min_m", r.v_min}, {"u_max_m", r.u_max},
          {"v_max_m", r.v_max}};
}

json selection_result(const Selection& s) {
  return {{"stroke_ids", s.stroke_ids}, {"picture_ids", s.picture_ids}};
}

/// Top-level fields other than pages, compared before and after each event.
std::map<std::string, json> header_fields(const NoteState& s) {
  const PinchSession& g = s.capture.gesture;
  std::map<std::string, json> out;
  out["clock"] = json::array({s.clock.playing, s.clock.position_ms});
  out["tool"] = std::string(to_string(s.tool));
  out["current_page"] = s.notebook.current_page;
  out["page_count"] = s.notebook.pages.size();
  out["next_id"] = s.next_id;
  out["selection"] = selection_result(s.selection);
  out["active_stroke"] = s.active_stroke ? stroke_to_json(*s.active_stroke) : json(nullptr);
  out["capture"] = json::array({std::string(to_string(g.phase())),
                                g.last_pinch() ? pinch_to_json(*g.last_pinch()) : json(nullptr),
                                g.rect() ? rect_result(*g.rect()) : json(nullptr),
                                s.capture.resume_playing, s.capture.t_lecture_s});
  return out;
}

/// Document field a header entry is stored under.
std::string document_field(const std::string& header) {
  if (header == "page_count") return "pages";
  return header;
}

}  // namespace

const std::vector<std::string>& event_kinds() {
  static const std::vector<std::string> kinds = {
      "stroke-begin", "stroke-point",  "stroke-end",     "tool-cycle",
      "erase",        "knife-select",  "move",           "marker-select",
      "review-seek",  "slider-seek",   "swipe",          "pinch-start",
      "pinch-move",   "unpinch",       "glue-sketch",    "clock-play",
      "clock-pause",  "capture-cancel", "reference-lookup"};
  return kinds;
}

json SessionEvent::to_json() const {
  return {{"seq", seq}, {"t_wall_ms", t_wall_ms}, {"kind", kind}, {"payload", payload}};
}

SessionEvent SessionEvent::from_json(const json& j) {
  auto fail = [](const std::string& what) -> Error {
    return Error(ErrorCode::kMalformedDocument, "event: " + what);
  };
  if (!j.is_object()) throw fail("expected an object");
  SessionEvent e;
  if (!j.contains("seq") || !j.at("seq").is_number_integer()) throw fail("seq must be an integer");
  e.seq = j.at("seq").get<std::int64_t>();
  if (!j.contains("t_wall_ms") || !j.at("t_wall_ms").is_number_integer()) {
    throw fail("t_wall_ms must be an integer");
  }
  e.t_wall_ms = j.at("t_wall_ms").get<std::int64_t>();
  if (!j.contains("kind") || !j.at("kind").is_string()) throw fail("kind must be a string");
  e.kind = j.at("kind").get<std::string>();
  if (j.contains("payload") && !j.at("payload").is_null()) {
    if (!j.at("payload").is_object()) throw fail("payload must be an object");
    e.payload = j.at("payload");
  }
  return e;
}

json EventOutcome::to_json() const {
  json j{{"seq", seq}, {"status", accepted ? "accepted" : "rejected"}};
  if (!reason.empty()) j["reason"] = reason;
  if (!diagnostic.empty()) j["diagnostic"] = diagnostic;
  if (!result.is_null()) j["result"] = result;
  return j;
}

Session::Session(double duration_s, NoteConfig config)
    : engine_(duration_s, std::move(config)) {}

EventOutcome Session::apply(const SessionEvent& raw) {
  if (raw.seq <= last_seq_) {
    throw Error(ErrorCode::kDuplicateSequence,
                "seq " + std::to_string(raw.seq) + " already applied (last " +
                    std::to_string(last_seq_) + ")");
  }
  if (raw.seq != last_seq_ + 1) {
    throw Error(ErrorCode::kSequenceGap, "expected seq " + std::to_string(last_seq_ + 1) +
                                             ", got " + std::to_string(raw.seq));
  }
  // Live ingestion and replay must see the same numbers.
  const SessionEvent e = SessionEvent::from_json(canonicalize(raw.to_json()));

  EventOutcome outcome;
  outcome.seq = e.seq;
  const NoteEngine backup = engine_;
  try {
    if (e.t_wall_ms < last_wall_ms_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "t_wall_ms " + std::to_string(e.t_wall_ms) + " is before " +
                      std::to_string(last_wall_ms_));
    }
    engine_.advance_clock(e.t_wall_ms);
    outcome.result = dispatch(e, outcome);
    outcome.accepted = true;
  } catch (const Error& err) {
    engine_ = backup;
    outcome.accepted = false;
    outcome.reason = err.what();
    outcome.diagnostic.clear();
    outcome.result = nullptr;
  } catch (const json::exception& err) {
    engine_ = backup;
    outcome.accepted = false;
    outcome.reason = std::string("InvalidArgument: payload: ") + err.what();
    outcome.diagnostic.clear();
    outcome.result = nullptr;
  }

  if (outcome.accepted) {
    record_touches(backup.state(), outcome.result, e);
    last_wall_ms_ = e.t_wall_ms;
  }
  last_seq_ = e.seq;

  json entry = e.to_json();
  entry["status"] = outcome.accepted ? "accepted" : "rejected";
  if (!outcome.reason.empty()) entry["reason"] = outcome.reason;
  if (!outcome.diagnostic.empty()) entry["diagnostic"] = outcome.diagnostic;
  log_.push_back(std::move(entry));
  return outcome;
}

json Session::dispatch(const SessionEvent& e, EventOutcome& outcome) {
  const json& p = e.payload;
  const std::string& kind = e.kind;
  auto clamp_note = [&](bool clamped) {
    if (clamped) outcome.diagnostic = "PointOutOfPage: clamped to the page";
  };

  if (kind == "stroke-begin") {
    clamp_note(engine_.begin_stroke(number(p, "x_mm"), number(p, "y_mm"),
                                    optional_number(p, "pressure")));
    return nullptr;
  }
  if (kind == "stroke-point") {
    clamp_note(engine_.append_point(number(p, "x_mm"), number(p, "y_mm"),
                                    optional_number(p, "pressure")));
    return nullptr;
  }
  if (kind == "stroke-end") {
    const Stroke& s = engine_.end_stroke();
    return {{"stroke_id", s.id}, {"t_start_s", s.t_start()}};
  }
  if (kind == "tool-cycle") {
    const std::string dir = p.contains("direction") ? text(p, "direction") : "forward";
    if (dir != "forward" && dir != "back") bad_payload("direction", "must be forward or back");
    const Tool t = engine_.cycle_tool(dir == "forward" ? CycleDirection::kForward
                                                       : CycleDirection::kBack);
    return {{"tool", std::string(to_string(t))}};
  }
  if (kind == "erase") {
    const EraseReport r = engine_.erase_at(number(p, "x_mm"), number(p, "y_mm"),
                                           number(p, "radius_mm"));
    return {{"removed_points", r.removed_points},
            {"removed_ids", r.removed_ids},
            {"created_ids", r.created_ids}};
  }
  if (kind == "knife-select") return selection_result(engine_.knife_select(region(p)));
  if (kind == "marker-select") return selection_result(engine_.marker_select(region(p)));
  if (kind == "move") {
    const Selection sel = engine_.selection();
    const MoveReport r = engine_.move_selection(sel, number(p, "dx_mm"), number(p, "dy_mm"));
    if (r.clamped) outcome.diagnostic = "move clamped to the page";
    return {{"dx_mm", r.dx_mm}, {"dy_mm", r.dy_mm}};
  }
  if (kind == "review-seek") {
    Selection sel = engine_.selection();
    if (p.contains("stroke_ids")) {
      sel = Selection{id_list(p, "stroke_ids"), {}};
    }
    return {{"t_lecture_s", engine_.review_seek(sel)}};
  }
  if (kind == "slider-seek") {
    const LectureClock& c = engine_.slider_seek(number(p, "t_s"));
    return {{"position_s", c.position_s()}};
  }
  if (kind == "swipe") {
    const std::string dir = text(p, "direction");
    if (dir != "left" && dir != "right") bad_payload("direction", "must be left or right");
    const int delta = swipe_to_flip(dir == "left" ? SwipeDirection::kLeft : SwipeDirection::kRight,
                                    engine_.state().config.swipe_left_is_next);
    const FlipResult f = engine_.flip_page(delta);
    if (f.noop) outcome.diagnostic = "already on the first page";
    return {{"page", f.page}, {"appended", f.appended}};
  }
  if (kind == "pinch-start") {
    engine_.pinch_start(pinch_from_json(p, "payload"));
    return {{"clock", "pause"}};
  }
  if (kind == "pinch-move") {
    const auto rect = engine_.pinch_move(pinch_from_json(p, "payload"));
    return {{"rect", rect ? rect_result(*rect) : json(nullptr)}};
  }
  if (kind == "unpinch") {
    std::optional<PinchPair> pinch;
    if (p.contains("left_m")) pinch = pinch_from_json(p, "payload");
    return {{"rect", rect_result(engine_.unpinch(pinch))}};
  }
  if (kind == "capture-cancel") {
    if (!engine_.cancel_capture()) {
      throw Error(ErrorCode::kNoPendingCapture, "nothing to cancel");
    }
    return {{"clock", "resume"}};
  }
  if (kind == "glue-sketch") {
    auto it = p.find("points_mm");
    if (it == p.end() || !it->is_array()) bad_payload("points_mm", "must be an array");
    std::vector<Vec2> sketch;
    for (const json& pt : *it) {
      if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
        bad_payload("points_mm", "must hold [x, y] pairs");
      }
      sketch.emplace_back(pt[0].get<double>(), pt[1].get<double>());
    }
    const Picture& pic = engine_.embed_picture(sketch);
    return {{"picture_id", pic.id}, {"clock", "resume"}};
  }
  if (kind == "clock-play") {
    engine_.play();
    return nullptr;
  }
  if (kind == "clock-pause") {
    engine_.pause();
    return nullptr;
  }
  if (kind == "reference-lookup") {
    throw Error(ErrorCode::kUnsupported, "reference lookup is not available");
  }
  throw Error(ErrorCode::kUnsupported, "unknown event kind '" + kind + "'");
}

void Session::record_touches(const NoteState& before, const json& result,
                             const SessionEvent& e) {
  const auto old_fields = header_fields(before);
  const auto new_fields = header_fields(engine_.state());
  for (const auto& [name, value] : new_fields) {
    if (old_fields.at(name) != value) field_touch_[document_field(name)] = e.seq;
  }
  auto touch = [&](const json& ids) {
    if (!ids.is_array()) return;
    for (const json& id : ids) entity_touch_[id.get<EntityId>()] = e.seq;
  };
  if (e.kind == "stroke-end") entity_touch_[result.at("stroke_id").get<EntityId>()] = e.seq;
  if (e.kind == "glue-sketch") entity_touch_[result.at("picture_id").get<EntityId>()] = e.seq;
  if (e.kind == "erase") {
    touch(result.at("removed_ids"));
    touch(result.at("created_ids"));
  }
  if (e.kind == "move") {
    touch(json(before.selection.stroke_ids));
    touch(json(before.selection.picture_ids));
  }
}

std::string Session::export_document() const { return serialize(engine_.state(), log_); }

std::optional<std::int64_t> Session::last_touch(EntityId id) const {
  auto it = entity_touch_.find(id);
  if (it == entity_touch_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::int64_t> Session::last_touch(const std::string& field) const {
  auto it = field_touch_.find(field);
  if (it == field_touch_.end()) return std::nullopt;
  return it->second;
}

EventOutcome apply_event(Session& session, const SessionEvent& event) {
  return session.apply(event);
}

namespace {

/// Canonical text of every stroke and picture keyed by id, with its page
/// and position so reordering also counts as a difference.
std::map<EntityId, std::string> entities(const json& pages) {
  std::map<EntityId, std::string> out;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    for (const char* list : {"strokes", "pictures"}) {
      const json& items = pages[i].at(list);
      for (std::size_t k = 0; k < items.size(); ++k) {
        const EntityId id = items[k].at("id").get<EntityId>();
        out[id] = std::to_string(i) + "/" + list + "/" + std::to_string(k) + "/" +
                  canonical_dump(items[k]);
      }
    }
  }
  return out;
}

}  // namespace

ReplayResult replay_document(const std::string& text) {
  const SessionDocument doc = deserialize(text);
  ReplayResult out{Session(doc.state.clock.duration_s(), doc.state.config), true,
                  std::nullopt, {}};
  Session& session = out.session;

  std::vector<std::int64_t> candidates;
  std::string detail;
  for (std::size_t i = 0; i < doc.events.size(); ++i) {
    const json& stored = doc.events[i];
    SessionEvent e;
    try {
      e = SessionEvent::from_json(stored);
    } catch (const Error& err) {
      throw Error(ErrorCode::kMalformedDocument,
                  "$.events[" + std::to_string(i) + "]: " + err.what());
    }
    const EventOutcome outcome = session.apply(e);
    const std::string status = stored.value("status", "accepted");
    const std::string replayed = outcome.accepted ? "accepted" : "rejected";
    if (status != replayed) {
      candidates.push_back(e.seq);
      if (detail.empty()) detail = "event " + std::to_string(e.seq) + " was " + status +
                                   ", replay " + replayed;
    }
  }

  const json stored_state = canonicalize(to_json(doc.state));
  const json replay_state = canonicalize(to_json(session.state()));
  if (stored_state != replay_state) {
    const std::int64_t first = doc.events.empty() ? 0 : doc.events.front().value("seq", 0);
    const std::int64_t last = session.last_seq();
    for (auto it = stored_state.begin(); it != stored_state.end(); ++it) {
      if (it.key() == "pages" || replay_state.at(it.key()) == it.value()) continue;
      candidates.push_back(session.last_touch(it.key()).value_or(first));
      if (detail.empty()) detail = "field " + it.key() + " differs";
    }
    if (stored_state.at("pages").size() != replay_state.at("pages").size()) {
      candidates.push_back(session.last_touch(std::string("pages")).value_or(first));
      if (detail.empty()) detail = "page count differs";
    }
    const auto a = entities(stored_state.at("pages"));
    const auto b = entities(replay_state.at("pages"));
    std::set<EntityId> ids;
    for (const auto& [id, _] : a) ids.insert(id);
    for (const auto& [id, _] : b) ids.insert(id);
    for (EntityId id : ids) {
      auto ia = a.find(id);
      auto ib = b.find(id);
      if (ia != a.end() && ib != b.end() && ia->second == ib->second) continue;
      candidates.push_back(session.last_touch(id).value_or(last));
      if (detail.empty()) detail = "entity " + std::to_string(id) + " differs";
    }
    if (candidates.empty()) candidates.push_back(last);
  }

  if (!candidates.empty()) {
    out.consistent = false;
    out.divergent_seq = *std::min_element(candidates.begin(), candidates.end());
    out.detail = detail;
  }
  return out;
}

Session replay(const std::string& text) {
  ReplayResult r = replay_document(text);
  if (!r.consistent) {
    throw Error(ErrorCode::kIntegrityMismatch,
                "first divergent seq " + std::to_string(*r.divergent_seq) + " (" +
                    r.detail + ")");
  }
  return std::move(r.session);
}

}  // namespace vrnote
