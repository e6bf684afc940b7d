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


#include "vrnote/note_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vrnote/error.hpp"

namespace vrnote {
namespace {

constexpr Tool kToolOrder[kToolCount] = {Tool::kStylus, Tool::kEraser,
                                         Tool::kMagicStick, Tool::kMarker,
                                         Tool::kGlue, Tool::kKnife};

bool contains_id(const std::vector<EntityId>& sorted, EntityId id) {
  return std::binary_search(sorted.begin(), sorted.end(), id);
}

void erase_id(std::vector<EntityId>& sorted, EntityId id) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), id);
  if (it != sorted.end() && *it == id) sorted.erase(it);
}

std::int64_t seconds_to_ms(double t_s) {
  return static_cast<std::int64_t>(std::llround(t_s * 1000.0));
}

}  // namespace

double q3(double x) {
  const double r = std::round(x * 1000.0) / 1000.0;
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

double q6(double x) {
  const double r = std::round(x * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

std::string_view to_string(Tool tool) {
  switch (tool) {
    case Tool::kStylus: return "stylus";
    case Tool::kEraser: return "eraser";
    case Tool::kMagicStick: return "magic-stick";
    case Tool::kMarker: return "marker";
    case Tool::kGlue: return "glue";
    case Tool::kKnife: return "knife";
  }
  return "stylus";
}

Tool parse_tool(std::string_view name) {
  for (Tool t : kToolOrder) {
    if (to_string(t) == name) return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown tool '" + std::string(name) + "'");
}

Tool cycle_tool(Tool tool, CycleDirection direction) {
  const int index = static_cast<int>(tool);
  const int step = direction == CycleDirection::kForward ? 1 : kToolCount - 1;
  return kToolOrder[(index + step) % kToolCount];
}

std::string_view to_string(InkTool tool) {
  return tool == InkTool::kPen ? "pen" : "marker-highlight";
}

InkTool parse_ink_tool(std::string_view name) {
  if (name == "pen") return InkTool::kPen;
  if (name == "marker-highlight") return InkTool::kMarkerHighlight;
  throw Error(ErrorCode::kInvalidArgument, "unknown ink '" + std::string(name) + "'");
}

void NoteConfig::validate() const {
  if (!(page_width_mm > 0.0) || !(page_height_mm > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "page size must be positive");
  }
  if (!(stroke_width_mm > 0.0) || !(marker_width_mm > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "stroke width must be positive");
  }
  slide.validate();
}

std::int64_t LectureClock::position_at(std::int64_t wall_ms) const {
  if (!playing || wall_ms <= anchor_wall_ms) return position_ms;
  return std::min(duration_ms, position_ms + (wall_ms - anchor_wall_ms));
}

void LectureClock::advance_to(std::int64_t wall_ms) {
  if (wall_ms < anchor_wall_ms) return;
  position_ms = position_at(wall_ms);
  anchor_wall_ms = wall_ms;
  if (position_ms >= duration_ms) playing = false;
}

void LectureClock::seek(double t_s) {
  position_ms = std::clamp<std::int64_t>(seconds_to_ms(t_s), 0, duration_ms);
}

NoteEngine::NoteEngine(double duration_s, NoteConfig config) {
  config.validate();
  if (!(duration_s >= 0.0) || !std::isfinite(duration_s)) {
    throw Error(ErrorCode::kInvalidArgument, "lecture duration must be >= 0");
  }
  state_.config = config;
  state_.clock.duration_ms = seconds_to_ms(duration_s);
  state_.capture.gesture = PinchSession(config.slide);
}

NoteEngine::NoteEngine(NoteState state) : state_(std::move(state)) {
  state_.config.validate();
}

void NoteEngine::require_tool(std::initializer_list<Tool> allowed,
                              std::string_view op) const {
  if (std::find(allowed.begin(), allowed.end(), state_.tool) != allowed.end()) return;
  std::string need;
  for (Tool t : allowed) {
    if (!need.empty()) need += " or ";
    need += to_string(t);
  }
  throw Error(ErrorCode::kWrongTool, std::string(op) + " needs " + need +
                                         ", active tool is " +
                                         std::string(to_string(state_.tool)));
}

void NoteEngine::require_no_stroke(std::string_view op) const {
  if (state_.active_stroke) {
    throw Error(ErrorCode::kStrokeInProgress,
                std::string(op) + " while a stroke is being recorded");
  }
}

void NoteEngine::advance_clock(std::int64_t wall_ms) { state_.clock.advance_to(wall_ms); }

void NoteEngine::play() {
  if (state_.capture.gesture.phase() != PinchSession::Phase::kIdle) {
    throw Error(ErrorCode::kCaptureInProgress, "clock is held by a capture");
  }
  if (state_.clock.position_ms < state_.clock.duration_ms) state_.clock.playing = true;
}

void NoteEngine::pause() { state_.clock.playing = false; }

NotePoint NoteEngine::make_point(double x_mm, double y_mm,
                                 std::optional<double> pressure,
                                 bool& clamped) const {
  if (!std::isfinite(x_mm) || !std::isfinite(y_mm)) {
    throw Error(ErrorCode::kInvalidArgument, "point is not finite");
  }
  NotePoint p;
  p.x_mm = q3(std::clamp(x_mm, 0.0, state_.config.page_width_mm));
  p.y_mm = q3(std::clamp(y_mm, 0.0, state_.config.page_height_mm));
  clamped = p.x_mm != q3(x_mm) || p.y_mm != q3(y_mm);
  p.t_lecture_s = state_.clock.position_s();
  p.t_wall_ms = state_.clock.anchor_wall_ms;
  if (pressure) {
    if (!std::isfinite(*pressure)) {
      throw Error(ErrorCode::kInvalidArgument, "pressure is not finite");
    }
    p.pressure = q3(std::clamp(*pressure, 0.0, 1.0));
  }
  return p;
}

bool NoteEngine::begin_stroke(double x_mm, double y_mm,
                              std::optional<double> pressure) {
  require_tool({Tool::kStylus, Tool::kMarker}, "stroke");
  require_no_stroke("stroke-begin");
  bool clamped = false;
  const NotePoint p = make_point(x_mm, y_mm, pressure, clamped);
  Stroke s;
  s.tool = state_.tool == Tool::kMarker ? InkTool::kMarkerHighlight : InkTool::kPen;
  s.width_mm = s.tool == InkTool::kPen ? state_.config.stroke_width_mm
                                       : state_.config.marker_width_mm;
  s.page_index = state_.notebook.current_page;
  s.points.push_back(p);
  state_.active_stroke = std::move(s);
  return clamped;
}

bool NoteEngine::append_point(double x_mm, double y_mm,
                              std::optional<double> pressure) {
  if (!state_.active_stroke) throw Error(ErrorCode::kAppendWithoutBegin);
  bool clamped = false;
  const NotePoint p = make_point(x_mm, y_mm, pressure, clamped);
  state_.active_stroke->points.push_back(p);
  return clamped;
}

const Stroke& NoteEngine::end_stroke() {
  if (!state_.active_stroke) {
    throw Error(ErrorCode::kAppendWithoutBegin, "stroke-end without a stroke");
  }
  Stroke s = std::move(*state_.active_stroke);
  state_.active_stroke.reset();
  s.id = state_.next_id++;
  Page& page = state_.notebook.pages.at(static_cast<std::size_t>(s.page_index));
  page.strokes.push_back(std::move(s));
  return page.strokes.back();
}

EraseReport NoteEngine::erase_at(double x_mm, double y_mm, double radius_mm) {
  require_tool({Tool::kEraser}, "erase");
  if (!(radius_mm > 0.0) || !std::isfinite(radius_mm) || !std::isfinite(x_mm) ||
      !std::isfinite(y_mm)) {
    throw Error(ErrorCode::kInvalidArgument, "erase needs a finite center and radius > 0");
  }
  const double r2 = radius_mm * radius_mm;
  auto inside = [&](const NotePoint& p) {
    const double dx = p.x_mm - x_mm;
    const double dy = p.y_mm - y_mm;
    return dx * dx + dy * dy <= r2;
  };

  EraseReport report;
  Page& page = current_page();
  std::vector<Stroke> kept;
  kept.reserve(page.strokes.size());
  for (Stroke& s : page.strokes) {
    if (std::none_of(s.points.begin(), s.points.end(), inside)) {
      kept.push_back(std::move(s));
      continue;
    }
    report.removed_ids.push_back(s.id);
    erase_id(state_.selection.stroke_ids, s.id);
    std::vector<NotePoint> run;
    auto flush = [&] {
      if (run.empty()) return;
      Stroke part;
      part.id = state_.next_id++;
      part.tool = s.tool;
      part.width_mm = s.width_mm;
      part.page_index = s.page_index;
      part.points = std::move(run);
      run.clear();
      report.created_ids.push_back(part.id);
      kept.push_back(std::move(part));
    };
    for (const NotePoint& p : s.points) {
      if (inside(p)) {
        ++report.removed_points;
        flush();
      } else {
        run.push_back(p);
      }
    }
    flush();
  }
  page.strokes = std::move(kept);
  return report;
}

Selection NoteEngine::select_region(const RectMm& region) {
  Selection sel;
  if (region.has_area()) {
    const Page& page = current_page();
    for (const Stroke& s : page.strokes) {
      const bool hit = std::any_of(s.points.begin(), s.points.end(), [&](const NotePoint& p) {
        return region.contains(p.x_mm, p.y_mm);
      });
      if (hit) sel.stroke_ids.push_back(s.id);
    }
    for (const Picture& pic : page.pictures) {
      if (region.intersects(pic.bbox_mm)) sel.picture_ids.push_back(pic.id);
    }
    std::sort(sel.stroke_ids.begin(), sel.stroke_ids.end());
    std::sort(sel.picture_ids.begin(), sel.picture_ids.end());
  }
  state_.selection = sel;
  return sel;
}

Selection NoteEngine::knife_select(const RectMm& region) {
  require_tool({Tool::kKnife}, "knife-select");
  return select_region(region);
}

Selection NoteEngine::marker_select(const RectMm& region) {
  require_tool({Tool::kMarker}, "marker-select");
  require_no_stroke("marker-select");
  return select_region(region);
}

MoveReport NoteEngine::move_selection(const Selection& selection, double dx_mm,
                                      double dy_mm) {
  require_tool({Tool::kKnife}, "move");
  if (selection.empty()) throw Error(ErrorCode::kEmptySelection, "nothing to move");
  if (!std::isfinite(dx_mm) || !std::isfinite(dy_mm)) {
    throw Error(ErrorCode::kInvalidArgument, "move delta is not finite");
  }
  Page& page = current_page();
  std::vector<Stroke*> strokes;
  std::vector<Picture*> pictures;
  for (Stroke& s : page.strokes) {
    if (contains_id(selection.stroke_ids, s.id)) strokes.push_back(&s);
  }
  for (Picture& p : page.pictures) {
    if (contains_id(selection.picture_ids, p.id)) pictures.push_back(&p);
  }
  if (strokes.size() != selection.stroke_ids.size() ||
      pictures.size() != selection.picture_ids.size()) {
    throw Error(ErrorCode::kUnknownId, "selection is not on the current page");
  }

  RectMm box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  auto grow = [&](double x, double y) {
    box.x_min = std::min(box.x_min, x);
    box.y_min = std::min(box.y_min, y);
    box.x_max = std::max(box.x_max, x);
    box.y_max = std::max(box.y_max, y);
  };
  for (const Stroke* s : strokes) {
    for (const NotePoint& p : s->points) grow(p.x_mm, p.y_mm);
  }
  for (const Picture* p : pictures) {
    grow(p->bbox_mm.x_min, p->bbox_mm.y_min);
    grow(p->bbox_mm.x_max, p->bbox_mm.y_max);
  }

  MoveReport report;
  report.dx_mm = q3(std::clamp(q3(dx_mm), -box.x_min, state_.config.page_width_mm - box.x_max));
  report.dy_mm = q3(std::clamp(q3(dy_mm), -box.y_min, state_.config.page_height_mm - box.y_max));
  report.clamped = report.dx_mm != q3(dx_mm) || report.dy_mm != q3(dy_mm);
  const double dx = report.dx_mm;
  const double dy = report.dy_mm;
  for (Stroke* s : strokes) {
    for (NotePoint& p : s->points) {
      p.x_mm = q3(p.x_mm + dx);
      p.y_mm = q3(p.y_mm + dy);
    }
  }
  for (Picture* p : pictures) {
    p->bbox_mm = {q3(p->bbox_mm.x_min + dx), q3(p->bbox_mm.y_min + dy),
                  q3(p->bbox_mm.x_max + dx), q3(p->bbox_mm.y_max + dy)};
  }
  return report;
}

double NoteEngine::review_seek(const Selection& selection) {
  if (selection.stroke_ids.empty()) {
    throw Error(ErrorCode::kEmptySelection, "no stroke selected");
  }
  if (state_.capture.gesture.phase() != PinchSession::Phase::kIdle) {
    throw Error(ErrorCode::kCaptureInProgress, "clock is held by a capture");
  }
  double earliest = std::numeric_limits<double>::infinity();
  std::size_t found = 0;
  for (const Page& page : state_.notebook.pages) {
    for (const Stroke& s : page.strokes) {
      if (contains_id(selection.stroke_ids, s.id)) {
        earliest = std::min(earliest, s.t_start());
        ++found;
      }
    }
  }
  if (found != selection.stroke_ids.size()) {
    throw Error(ErrorCode::kUnknownId, "selection names a missing stroke");
  }
  state_.clock.seek(earliest);
  state_.clock.playing = state_.clock.position_ms < state_.clock.duration_ms;
  return earliest;
}

const LectureClock& NoteEngine::slider_seek(double t_s) {
  if (!std::isfinite(t_s)) throw Error(ErrorCode::kInvalidArgument, "seek time is not finite");
  state_.clock.seek(t_s);
  if (state_.clock.position_ms >= state_.clock.duration_ms) state_.clock.playing = false;
  return state_.clock;
}

void NoteEngine::pinch_start(const PinchPair& pinch) {
  CaptureState& c = state_.capture;
  c.gesture.start(pinch);
  c.resume_playing = state_.clock.playing;
  state_.clock.playing = false;
}

std::optional<CaptureRect> NoteEngine::pinch_move(const PinchPair& pinch) {
  return state_.capture.gesture.move(pinch);
}

CaptureRect NoteEngine::unpinch(const std::optional<PinchPair>& pinch) {
  PinchSession& g = state_.capture.gesture;
  const CaptureRect exact = g.unpinch(pinch);
  // Stored at document precision so a saved state reads back equal.
  const CaptureRect rect{q6(exact.u_min), q6(exact.v_min), q6(exact.u_max), q6(exact.v_max)};
  g = PinchSession::restore(g.slide(), g.phase(), g.last_pinch(), rect);
  state_.capture.t_lecture_s = state_.clock.position_s();
  return rect;
}

bool NoteEngine::cancel_capture() {
  CaptureState& c = state_.capture;
  if (c.gesture.cancel() == ClockDirective::kNone) return false;
  if (c.resume_playing) play();
  c.resume_playing = false;
  c.t_lecture_s = 0.0;
  return true;
}

const Picture& NoteEngine::embed_picture(const std::vector<Vec2>& sketch_mm) {
  require_tool({Tool::kGlue}, "glue-sketch");
  CaptureState& c = state_.capture;
  if (c.gesture.phase() != PinchSession::Phase::kPending) {
    throw Error(ErrorCode::kNoPendingCapture);
  }
  if (sketch_mm.empty()) throw Error(ErrorCode::kEmptySketch);
  RectMm box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Vec2& p : sketch_mm) {
    if (!p.allFinite()) throw Error(ErrorCode::kInvalidArgument, "sketch point is not finite");
    const double x = q3(std::clamp(p.x(), 0.0, state_.config.page_width_mm));
    const double y = q3(std::clamp(p.y(), 0.0, state_.config.page_height_mm));
    box.x_min = std::min(box.x_min, x);
    box.y_min = std::min(box.y_min, y);
    box.x_max = std::max(box.x_max, x);
    box.y_max = std::max(box.y_max, y);
  }

  Picture pic;
  pic.id = state_.next_id++;
  pic.crop = *c.gesture.rect();
  pic.bbox_mm = box;
  pic.t_lecture_s = c.t_lecture_s;
  c.gesture.confirm_embedded();
  const bool resume = c.resume_playing;
  c.resume_playing = false;
  c.t_lecture_s = 0.0;
  if (resume) play();

  Page& page = current_page();
  page.pictures.push_back(pic);
  return page.pictures.back();
}

FlipResult NoteEngine::flip_page(int delta) {
  if (delta != 1 && delta != -1) {
    throw Error(ErrorCode::kInvalidArgument, "page delta must be +1 or -1");
  }
  require_no_stroke("flip");
  Notebook& nb = state_.notebook;
  FlipResult result;
  if (delta < 0 && nb.current_page == 0) {
    result.noop = true;
  } else {
    if (delta > 0 && nb.current_page + 1 == static_cast<int>(nb.pages.size())) {
      nb.pages.emplace_back();
      result.appended = true;
    }
    nb.current_page += delta;
    state_.selection = {};
  }
  result.page = nb.current_page;
  return result;
}

Tool NoteEngine::cycle_tool(CycleDirection direction) {
  require_no_stroke("tool-cycle");
  state_.tool = vrnote::cycle_tool(state_.tool, direction);
  return state_.tool;
}

double NoteEngine::character_diagonal(const Selection& selection) const {
  std::vector<const Stroke*> strokes;
  for (const Page& page : state_.notebook.pages) {
    for (const Stroke& s : page.strokes) {
      if (contains_id(selection.stroke_ids, s.id)) strokes.push_back(&s);
    }
  }
  if (strokes.size() != selection.stroke_ids.size()) {
    throw Error(ErrorCode::kUnknownId, "selection names a missing stroke");
  }
  return vrnote::character_diagonal(strokes);
}

double character_diagonal(const std::vector<const Stroke*>& strokes) {
  double x_min = std::numeric_limits<double>::infinity();
  double y_min = x_min;
  double x_max = -x_min;
  double y_max = -x_min;
  for (const Stroke* s : strokes) {
    for (const NotePoint& p : s->points) {
      x_min = std::min(x_min, p.x_mm);
      y_min = std::min(y_min, p.y_mm);
      x_max = std::max(x_max, p.x_mm);
      y_max = std::max(y_max, p.y_mm);
    }
  }
  if (!(x_min <= x_max)) throw Error(ErrorCode::kEmptySelection, "no stroke selected");
  return std::hypot(x_max - x_min, y_max - y_min) / 10.0;
}

}  // namespace vrnote
