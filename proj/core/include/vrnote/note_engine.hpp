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


// Lecture-timestamped notebook: strokes, eraser, knife/marker selection,
// review seek, picture embedding, page flips and the lecture clock.
//
// Every length is millimeters and every lecture time seconds, both held at
// 1e-3 resolution (see q3()) so a state written to text and read back is
// bit-identical.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vrnote/gesture_mapper.hpp"

namespace vrnote {

/// Rounds to the nearest multiple of 1e-3.
double q3(double x);
/// Rounds to the nearest multiple of 1e-6.
double q6(double x);

enum class Tool { kStylus, kEraser, kMagicStick, kMarker, kGlue, kKnife };
inline constexpr int kToolCount = 6;

std::string_view to_string(Tool tool);
/// Throws InvalidArgument for an unknown name.
Tool parse_tool(std::string_view name);

enum class CycleDirection { kForward, kBack };
Tool cycle_tool(Tool tool, CycleDirection direction);

/// Ink kind of a committed stroke.
enum class InkTool { kPen, kMarkerHighlight };
std::string_view to_string(InkTool tool);
InkTool parse_ink_tool(std::string_view name);

struct NoteConfig {
  double page_width_mm = 210.0;
  double page_height_mm = 297.0;
  double stroke_width_mm = 1.2;
  double marker_width_mm = 4.0;
  bool swipe_left_is_next = true;
  Slide slide;

  void validate() const;
};

struct NotePoint {
  double x_mm = 0.0;
  double y_mm = 0.0;
  double t_lecture_s = 0.0;
  std::int64_t t_wall_ms = 0;
  std::optional<double> pressure;

  bool operator==(const NotePoint&) const = default;
};

using EntityId = std::uint64_t;

struct Stroke {
  EntityId id = 0;
  InkTool tool = InkTool::kPen;
  double width_mm = 1.2;
  std::vector<NotePoint> points;
  int page_index = 0;

  double t_start() const { return points.front().t_lecture_s; }
  bool operator==(const Stroke&) const = default;
};

struct RectMm {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  bool has_area() const { return x_min < x_max && y_min < y_max; }
  bool contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
  bool intersects(const RectMm& o) const {
    return x_min <= o.x_max && o.x_min <= x_max && y_min <= o.y_max &&
           o.y_min <= y_max;
  }
  bool operator==(const RectMm&) const = default;
};

struct Picture {
  EntityId id = 0;
  CaptureRect crop;       // slide area, meters
  RectMm bbox_mm;
  double t_lecture_s = 0.0;  // also identifies the lecture frame captured

  bool operator==(const Picture&) const = default;
};

struct Page {
  std::vector<Stroke> strokes;
  std::vector<Picture> pictures;

  bool operator==(const Page&) const = default;
};

struct Notebook {
  std::vector<Page> pages{Page{}};
  int current_page = 0;

  bool operator==(const Notebook&) const = default;
};

/// Lecture playback position, advanced by wall time while playing. Held in
/// whole milliseconds.
struct LectureClock {
  bool playing = false;
  std::int64_t position_ms = 0;
  std::int64_t duration_ms = 0;
  std::int64_t anchor_wall_ms = 0;  // wall time `position_ms` refers to

  double position_s() const { return static_cast<double>(position_ms) / 1000.0; }
  double duration_s() const { return static_cast<double>(duration_ms) / 1000.0; }
  /// Position at a later wall time without mutating.
  std::int64_t position_at(std::int64_t wall_ms) const;
  /// Moves the anchor to `wall_ms`, accumulating play time. Playback stops
  /// at the end of the lecture.
  void advance_to(std::int64_t wall_ms);
  /// Clamps to [0, duration].
  void seek(double t_s);

  bool operator==(const LectureClock&) const = default;
};

struct Selection {
  std::vector<EntityId> stroke_ids;   // sorted
  std::vector<EntityId> picture_ids;  // sorted

  bool empty() const { return stroke_ids.empty() && picture_ids.empty(); }
  bool operator==(const Selection&) const = default;
};

struct EraseReport {
  int removed_points = 0;
  std::vector<EntityId> removed_ids;  // strokes erased or split
  std::vector<EntityId> created_ids;  // surviving runs of split strokes
};

struct FlipResult {
  int page = 0;
  bool appended = false;
  bool noop = false;  // backward flip on the first page
};

struct MoveReport {
  double dx_mm = 0.0;  // applied after clamping
  double dy_mm = 0.0;
  bool clamped = false;
};

/// Capture-in-progress bookkeeping kept beside the gesture state machine.
struct CaptureState {
  PinchSession gesture;
  bool resume_playing = false;  // clock was playing when the pinch began
  double t_lecture_s = 0.0;     // clock position when finalized
};

/// Complete engine state; equal states serialize to identical text.
struct NoteState {
  NoteConfig config;
  Notebook notebook;
  LectureClock clock;
  Tool tool = Tool::kStylus;
  EntityId next_id = 1;
  Selection selection;
  std::optional<Stroke> active_stroke;
  CaptureState capture;
};

class NoteEngine {
 public:
  explicit NoteEngine(double duration_s, NoteConfig config = {});
  explicit NoteEngine(NoteState state);

  const NoteState& state() const { return state_; }
  const Notebook& notebook() const { return state_.notebook; }
  const LectureClock& clock() const { return state_.clock; }
  Tool tool() const { return state_.tool; }
  const Selection& selection() const { return state_.selection; }

  /// Brings the lecture clock up to `wall_ms` (ms since session start).
  void advance_clock(std::int64_t wall_ms);
  /// Throws CaptureInProgress while a capture holds the clock.
  void play();
  void pause();

  /// Stroke recording. Points are stamped with the clock position and
  /// clamped to the page; the return value reports a clamp
  /// (PointOutOfPage). begin throws WrongTool (tool must be stylus or
  /// marker) or StrokeInProgress; append/end throw AppendWithoutBegin.
  bool begin_stroke(double x_mm, double y_mm, std::optional<double> pressure = {});
  bool append_point(double x_mm, double y_mm, std::optional<double> pressure = {});
  const Stroke& end_stroke();

  /// Removes every point of the current page within `radius_mm` of the
  /// center, splitting strokes into their surviving runs.
  EraseReport erase_at(double x_mm, double y_mm, double radius_mm);

  /// Whole strokes with at least one point in `region`, plus pictures whose
  /// box meets it, on the current page. Both store the selection.
  Selection knife_select(const RectMm& region);
  Selection marker_select(const RectMm& region);

  /// Translates the selected geometry; the delta is clamped so everything
  /// stays on the page. Throws EmptySelection or UnknownId.
  MoveReport move_selection(const Selection& selection, double dx_mm,
                            double dy_mm);

  /// Earliest t_start among the selected strokes; seeks the clock there and
  /// plays. Pictures are ignored. Throws EmptySelection.
  double review_seek(const Selection& selection);
  const LectureClock& slider_seek(double t_s);

  /// Capture gesture; pinch_start pauses the clock.
  void pinch_start(const PinchPair& pinch);
  std::optional<CaptureRect> pinch_move(const PinchPair& pinch);
  CaptureRect unpinch(const std::optional<PinchPair>& pinch = std::nullopt);
  /// Drops a pinch or pending capture and restores the clock. Returns false
  /// when nothing was in progress.
  bool cancel_capture();

  /// Glue sketch on the page becomes the picture box. Throws WrongTool,
  /// NoPendingCapture or EmptySketch. Resumes the clock if the capture
  /// paused it.
  const Picture& embed_picture(const std::vector<Vec2>& sketch_mm);

  /// delta must be +1 or -1. Clears the selection.
  FlipResult flip_page(int delta);
  Tool cycle_tool(CycleDirection direction);

  /// Diagonal of the bounding box of the selected strokes, in centimeters.
  double character_diagonal(const Selection& selection) const;

 private:
  void require_tool(std::initializer_list<Tool> allowed, std::string_view op) const;
  void require_no_stroke(std::string_view op) const;
  NotePoint make_point(double x_mm, double y_mm, std::optional<double> pressure,
                       bool& clamped) const;
  Selection select_region(const RectMm& region);
  Page& current_page() { return state_.notebook.pages[state_.notebook.current_page]; }

  NoteState state_;
};

/// Free form of NoteEngine::character_diagonal over explicit strokes.
double character_diagonal(const std::vector<const Stroke*>& strokes);

}  // namespace vrnote
