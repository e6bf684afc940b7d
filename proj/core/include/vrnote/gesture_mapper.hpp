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


// Pinch and swipe gestures mapped onto slide captures and page flips.

#pragma once

#include <optional>
#include <string_view>

#include "vrnote/geometry.hpp"

namespace vrnote {

/// Cyclopean eye position plus an orthonormal head frame.
struct HeadPose {
  Vec3 eye = Vec3::Zero();
  Vec3 forward = Vec3::UnitZ();
  Vec3 up = Vec3::UnitY();
  Vec3 right = Vec3::UnitX();
};

struct PinchPair {
  Vec3 left_pinch = Vec3::Zero();
  Vec3 right_pinch = Vec3::Zero();
  HeadPose head;
};

/// The virtual lecture screen. Slide coordinates are meters from `center`
/// along `u_axis` and `v_axis`.
struct Slide {
  Vec3 center{0.0, 0.0, 2.0};
  Vec3 u_axis = Vec3::UnitX();
  Vec3 v_axis = Vec3::UnitY();
  double width = 3.2;
  double height = 1.8;

  Plane plane() const;
  Vec2 to_slide(const Vec3& world) const;
  void validate() const;
};

struct CaptureRect {
  double u_min = 0.0;
  double v_min = 0.0;
  double u_max = 0.0;
  double v_max = 0.0;

  bool operator==(const CaptureRect&) const = default;
};

/// Builds the rectangle spanned by the two pinch points in the plane facing
/// the head, traces its corners from the eye onto the slide and returns
/// their bounding rectangle clipped to the slide.
///
/// The rectangle plane sits at the mean forward depth of the two pinches;
/// each pinch is first slid along its own eye ray onto that plane, so
/// moving the pinches along their rays never changes the result.
///
/// Throws DegeneratePinch when a pinch is not in front of the head or the
/// rectangle has no width or height, RayMiss when a corner ray does not
/// reach the slide plane or the clipped rectangle is empty.
CaptureRect pinch_to_rect(const PinchPair& pinch, const Slide& slide = {});

enum class ClockDirective { kNone, kPause, kResume };

/// Capture gesture state machine: idle -> pinching (clock paused) ->
/// pending (rect finalized, waiting for the glue) -> idle (resumed).
class PinchSession {
 public:
  enum class Phase { kIdle, kPinching, kPending };

  explicit PinchSession(Slide slide = {}) : slide_(slide) { slide_.validate(); }

  /// Throws CaptureInProgress unless idle. Returns kPause.
  ClockDirective start(const PinchPair& pinch);
  /// Updates the live pinch. Throws OrphanUnpinch unless pinching. The live
  /// rectangle is empty while the pinch is degenerate.
  std::optional<CaptureRect> move(const PinchPair& pinch);
  /// Finalizes from the latest pinch (or `pinch` when given). Throws
  /// OrphanUnpinch unless pinching, and the pinch_to_rect errors, in which
  /// case the session stays pinching.
  CaptureRect unpinch(const std::optional<PinchPair>& pinch = std::nullopt);
  /// The picture was embedded: pending -> idle. Returns kResume.
  ClockDirective confirm_embedded();
  /// Abandons a pinch or pending capture. Returns kResume, or kNone when
  /// idle.
  ClockDirective cancel();

  Phase phase() const { return phase_; }
  const std::optional<PinchPair>& last_pinch() const { return pinch_; }
  const std::optional<CaptureRect>& rect() const { return rect_; }
  const Slide& slide() const { return slide_; }

  /// Rebuilds a session from stored fields, for deserialization.
  static PinchSession restore(const Slide& slide, Phase phase,
                              std::optional<PinchPair> pinch,
                              std::optional<CaptureRect> rect);

 private:
  Slide slide_;
  Phase phase_ = Phase::kIdle;
  std::optional<PinchPair> pinch_;
  std::optional<CaptureRect> rect_;
};

std::string_view to_string(PinchSession::Phase phase);
PinchSession::Phase parse_pinch_phase(std::string_view name);

enum class SwipeDirection { kLeft, kRight };

/// Page delta for a swipe: left is the next page unless `left_is_next` is
/// false.
int swipe_to_flip(SwipeDirection direction, bool left_is_next = true);

}  // namespace vrnote
