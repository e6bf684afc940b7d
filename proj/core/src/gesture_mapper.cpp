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


#include "vrnote/gesture_mapper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vrnote/error.hpp"

namespace vrnote {

Plane Slide::plane() const {
  return Plane{center, u_axis.cross(v_axis).normalized()};
}

Vec2 Slide::to_slide(const Vec3& world) const {
  const Vec3 d = world - center;
  return {d.dot(u_axis), d.dot(v_axis)};
}

void Slide::validate() const {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "slide size must be positive");
  }
  if (std::abs(u_axis.norm() - 1.0) > 1e-9 || std::abs(v_axis.norm() - 1.0) > 1e-9 ||
      std::abs(u_axis.dot(v_axis)) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "slide axes must be orthonormal");
  }
}

CaptureRect pinch_to_rect(const PinchPair& pinch, const Slide& slide) {
  const HeadPose& head = pinch.head;
  const Vec3 forward = head.forward.normalized();
  const Vec3 right = head.right.normalized();
  const Vec3 up = head.up.normalized();

  const Vec3 a = pinch.left_pinch - head.eye;
  const Vec3 b = pinch.right_pinch - head.eye;
  const double depth_a = a.dot(forward);
  const double depth_b = b.dot(forward);
  if (!(depth_a > 0.0) || !(depth_b > 0.0)) {
    throw Error(ErrorCode::kDegeneratePinch, "pinch behind the head");
  }
  if ((pinch.left_pinch - pinch.right_pinch).norm() == 0.0) {
    throw Error(ErrorCode::kDegeneratePinch, "pinch points coincide");
  }

  const double depth = 0.5 * (depth_a + depth_b);
  const Vec3 qa = a * (depth / depth_a);
  const Vec3 qb = b * (depth / depth_b);
  const double ra = qa.dot(right);
  const double rb = qb.dot(right);
  const double ua = qa.dot(up);
  const double ub = qb.dot(up);
  const double scale = depth * 1e-12;
  if (std::abs(ra - rb) <= scale || std::abs(ua - ub) <= scale) {
    throw Error(ErrorCode::kDegeneratePinch, "rectangle has no width or height");
  }

  const Plane plane = slide.plane();
  double u_min = std::numeric_limits<double>::infinity();
  double v_min = u_min;
  double u_max = -u_min;
  double v_max = -u_min;
  for (const double r : {ra, rb}) {
    for (const double h : {ua, ub}) {
      const Vec3 dir = depth * forward + r * right + h * up;
      Vec3 hit;
      try {
        hit = ray_plane_intersect(head.eye, dir, plane);
      } catch (const Error& e) {
        throw Error(ErrorCode::kRayMiss, e.what());
      }
      const Vec2 s = slide.to_slide(hit);
      u_min = std::min(u_min, s.x());
      u_max = std::max(u_max, s.x());
      v_min = std::min(v_min, s.y());
      v_max = std::max(v_max, s.y());
    }
  }

  CaptureRect rect;
  rect.u_min = std::max(u_min, -0.5 * slide.width);
  rect.u_max = std::min(u_max, 0.5 * slide.width);
  rect.v_min = std::max(v_min, -0.5 * slide.height);
  rect.v_max = std::min(v_max, 0.5 * slide.height);
  if (!(rect.u_min < rect.u_max) || !(rect.v_min < rect.v_max)) {
    throw Error(ErrorCode::kRayMiss, "capture area lies outside the slide");
  }
  return rect;
}

ClockDirective PinchSession::start(const PinchPair& pinch) {
  if (phase_ != Phase::kIdle) {
    throw Error(ErrorCode::kCaptureInProgress,
                std::string("capture is ") + std::string(to_string(phase_)));
  }
  phase_ = Phase::kPinching;
  pinch_ = pinch;
  rect_.reset();
  return ClockDirective::kPause;
}

std::optional<CaptureRect> PinchSession::move(const PinchPair& pinch) {
  if (phase_ != Phase::kPinching) {
    throw Error(ErrorCode::kOrphanUnpinch, "pinch-move without an active pinch");
  }
  pinch_ = pinch;
  try {
    return pinch_to_rect(pinch, slide_);
  } catch (const Error&) {
    return std::nullopt;
  }
}

CaptureRect PinchSession::unpinch(const std::optional<PinchPair>& pinch) {
  if (phase_ != Phase::kPinching) {
    throw Error(ErrorCode::kOrphanUnpinch, "no active pinch");
  }
  const PinchPair& final_pinch = pinch ? *pinch : *pinch_;
  const CaptureRect rect = pinch_to_rect(final_pinch, slide_);
  pinch_ = final_pinch;
  rect_ = rect;
  phase_ = Phase::kPending;
  return rect;
}

ClockDirective PinchSession::confirm_embedded() {
  if (phase_ != Phase::kPending) {
    throw Error(ErrorCode::kNoPendingCapture);
  }
  phase_ = Phase::kIdle;
  pinch_.reset();
  rect_.reset();
  return ClockDirective::kResume;
}

ClockDirective PinchSession::cancel() {
  if (phase_ == Phase::kIdle) return ClockDirective::kNone;
  phase_ = Phase::kIdle;
  pinch_.reset();
  rect_.reset();
  return ClockDirective::kResume;
}

PinchSession PinchSession::restore(const Slide& slide, Phase phase,
                                   std::optional<PinchPair> pinch,
                                   std::optional<CaptureRect> rect) {
  if (phase == Phase::kPinching && !pinch) {
    throw Error(ErrorCode::kMalformedDocument, "pinching capture without a pinch");
  }
  if (phase == Phase::kPending && !rect) {
    throw Error(ErrorCode::kMalformedDocument, "pending capture without a rect");
  }
  PinchSession s(slide);
  s.phase_ = phase;
  s.pinch_ = std::move(pinch);
  s.rect_ = rect;
  return s;
}

std::string_view to_string(PinchSession::Phase phase) {
  switch (phase) {
    case PinchSession::Phase::kIdle: return "idle";
    case PinchSession::Phase::kPinching: return "pinching";
    case PinchSession::Phase::kPending: return "pending";
  }
  return "idle";
}

PinchSession::Phase parse_pinch_phase(std::string_view name) {
  for (auto phase : {PinchSession::Phase::kIdle, PinchSession::Phase::kPinching,
                     PinchSession::Phase::kPending}) {
    if (to_string(phase) == name) return phase;
  }
  throw Error(ErrorCode::kMalformedDocument,
              "unknown capture phase '" + std::string(name) + "'");
}

int swipe_to_flip(SwipeDirection direction, bool left_is_next) {
  const int left = left_is_next ? 1 : -1;
  return direction == SwipeDirection::kLeft ? left : -left;
}

}  // namespace vrnote
