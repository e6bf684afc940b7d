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


#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"
#include "vrnote/gesture_mapper.hpp"
#include "vrnote/random.hpp"

namespace vrnote {
namespace {

using testing::code_of;

PinchPair desk_pinch(const Vec3& l, const Vec3& r) {
  PinchPair p;
  p.left_pinch = l;
  p.right_pinch = r;
  return p;
}

void expect_rect_near(const CaptureRect& got, const CaptureRect& want, double tol) {
  EXPECT_NEAR(got.u_min, want.u_min, tol);
  EXPECT_NEAR(got.v_min, want.v_min, tol);
  EXPECT_NEAR(got.u_max, want.u_max, tol);
  EXPECT_NEAR(got.v_max, want.v_max, tol);
}

TEST(PinchToRect, DeskExample) {
  const CaptureRect r =
      pinch_to_rect(desk_pinch(Vec3(-0.1, -0.05, 0.5), Vec3(0.1, 0.05, 0.5)));
  expect_rect_near(r, {-0.4, -0.2, 0.4, 0.2}, 1e-9);
}

TEST(PinchToRect, CornerOrderDoesNotMatter) {
  const CaptureRect a = pinch_to_rect(desk_pinch(Vec3(0.1, -0.05, 0.5), Vec3(-0.1, 0.05, 0.5)));
  expect_rect_near(a, {-0.4, -0.2, 0.4, 0.2}, 1e-9);
}

TEST(PinchToRect, IdenticalPointsAreDegenerate) {
  EXPECT_EQ(code_of([] { pinch_to_rect(desk_pinch(Vec3(0, 0, 0.5), Vec3(0, 0, 0.5))); }),
            ErrorCode::kDegeneratePinch);
}

TEST(PinchToRect, ZeroHeightIsDegenerate) {
  EXPECT_EQ(code_of([] { pinch_to_rect(desk_pinch(Vec3(-0.1, 0, 0.5), Vec3(0.1, 0, 0.5))); }),
            ErrorCode::kDegeneratePinch);
}

TEST(PinchToRect, BehindHeadIsDegenerate) {
  EXPECT_EQ(code_of([] { pinch_to_rect(desk_pinch(Vec3(-0.1, 0, -0.5), Vec3(0.1, 0.1, 0.5))); }),
            ErrorCode::kDegeneratePinch);
}

TEST(PinchToRect, SymmetricPinchIsCentered) {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(0.01, 0.2), y = rng.uniform(0.01, 0.1), z = rng.uniform(0.3, 0.8);
    const CaptureRect r = pinch_to_rect(desk_pinch(Vec3(-x, -y, z), Vec3(x, y, z)));
    EXPECT_NEAR(r.u_min + r.u_max, 0.0, 1e-12);
    EXPECT_NEAR(r.v_min + r.v_max, 0.0, 1e-12);
  }
}

TEST(PinchToRect, ClipsToSlide) {
  const CaptureRect r = pinch_to_rect(desk_pinch(Vec3(-0.1, -0.05, 0.5), Vec3(0.6, 0.05, 0.5)));
  EXPECT_NEAR(r.u_min, -0.4, 1e-9);
  EXPECT_NEAR(r.u_max, 1.6, 1e-12);
}

TEST(PinchToRect, RayMiss) {
  // Entirely off the right edge of the slide.
  EXPECT_EQ(code_of([] { pinch_to_rect(desk_pinch(Vec3(0.5, 0.0, 0.5), Vec3(0.6, 0.05, 0.5))); }),
            ErrorCode::kRayMiss);
  // Looking away from the slide.
  PinchPair p = desk_pinch(Vec3(-0.1, -0.05, -0.5), Vec3(0.1, 0.05, -0.5));
  p.head.forward = -Vec3::UnitZ();
  p.head.right = -Vec3::UnitX();
  EXPECT_EQ(code_of([&] { pinch_to_rect(p); }), ErrorCode::kRayMiss);
}

HeadPose random_head(Rng& rng) {
  HeadPose h;
  h.eye = Vec3(rng.uniform(-0.3, 0.3), rng.uniform(-0.2, 0.2), rng.uniform(-0.3, 0.3));
  const double yaw = rng.uniform(-0.25, 0.25), pitch = rng.uniform(-0.2, 0.2);
  h.forward = Vec3(std::sin(yaw) * std::cos(pitch), std::sin(pitch), std::cos(yaw) * std::cos(pitch));
  h.right = Vec3::UnitY().cross(h.forward).normalized();
  h.up = h.forward.cross(h.right);
  return h;
}

// Corner hit by the explicit line-plane formula t = ((C - E) . n) / (d . n).
Vec2 oracle_hit(const Vec3& eye, const Vec3& dir, const Slide& s) {
  const Vec3 n = s.u_axis.cross(s.v_axis);
  const double t = (s.center - eye).dot(n) / dir.dot(n);
  const Vec3 p = eye + t * dir;
  return {(p - s.center).dot(s.u_axis), (p - s.center).dot(s.v_axis)};
}

TEST(PinchToRect, ScalingInvarianceAndOracle) {
  Rng rng(2718);
  const Slide slide;
  int checked = 0;
  while (checked < 1000) {
    PinchPair p;
    p.head = random_head(rng);
    const HeadPose& h = p.head;
    const double depth = rng.uniform(0.3, 0.7);
    const auto point = [&](double r, double u) { return h.eye + depth * h.forward + r * h.right + u * h.up; };
    p.left_pinch = point(rng.uniform(-0.25, 0.0), rng.uniform(-0.15, 0.0));
    p.right_pinch = point(rng.uniform(0.0, 0.25), rng.uniform(0.0, 0.15));
    CaptureRect base;
    try {
      base = pinch_to_rect(p, slide);
    } catch (const Error&) {
      continue;
    }
    ++checked;

    // Oracle: both pinches lie at the same depth here, so the corners are
    // the pinch offsets combined along right and up.
    const Vec3 a = p.left_pinch - h.eye, b = p.right_pinch - h.eye;
    double u0 = 1e9, v0 = 1e9, u1 = -1e9, v1 = -1e9;
    for (double r : {a.dot(h.right), b.dot(h.right)}) {
      for (double u : {a.dot(h.up), b.dot(h.up)}) {
        const Vec2 s = oracle_hit(h.eye, depth * h.forward + r * h.right + u * h.up, slide);
        u0 = std::min(u0, s.x());
        u1 = std::max(u1, s.x());
        v0 = std::min(v0, s.y());
        v1 = std::max(v1, s.y());
      }
    }
    expect_rect_near(base, {std::max(u0, -1.6), std::max(v0, -0.9), std::min(u1, 1.6),
                            std::min(v1, 0.9)},
                     1e-9);

    PinchPair scaled = p;
    scaled.left_pinch = h.eye + 2.0 * a;
    scaled.right_pinch = h.eye + 2.0 * b;
    expect_rect_near(pinch_to_rect(scaled, slide), base, 1e-9);
    // Each point moved by its own factor.
    scaled.left_pinch = h.eye + rng.uniform(0.5, 3.0) * a;
    scaled.right_pinch = h.eye + rng.uniform(0.5, 3.0) * b;
    expect_rect_near(pinch_to_rect(scaled, slide), base, 1e-9);
  }
}

TEST(Slide, Validate) {
  Slide s;
  EXPECT_NO_THROW(s.validate());
  s.width = 0;
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::kInvalidArgument);
  s = {};
  s.v_axis = Vec3(0.1, 1, 0);
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::kInvalidArgument);
}

const PinchPair kPinch = desk_pinch(Vec3(-0.1, -0.05, 0.5), Vec3(0.1, 0.05, 0.5));

TEST(PinchSession, StartThenUnpinch) {
  PinchSession s;
  EXPECT_EQ(s.start(kPinch), ClockDirective::kPause);
  EXPECT_EQ(s.phase(), PinchSession::Phase::kPinching);
  const CaptureRect r = s.unpinch();
  expect_rect_near(r, {-0.4, -0.2, 0.4, 0.2}, 1e-9);
  EXPECT_EQ(s.phase(), PinchSession::Phase::kPending);
  EXPECT_EQ(s.rect(), r);
  EXPECT_EQ(s.confirm_embedded(), ClockDirective::kResume);
  EXPECT_EQ(s.phase(), PinchSession::Phase::kIdle);
}

TEST(PinchSession, LastMoveWins) {
  PinchSession s;
  s.start(kPinch);
  PinchPair last;
  for (int i = 1; i <= 10; ++i) {
    last = desk_pinch(Vec3(-0.01 * i, -0.005 * i, 0.5), Vec3(0.1, 0.05, 0.5));
    ASSERT_TRUE(s.move(last).has_value());
  }
  EXPECT_EQ(s.unpinch(), pinch_to_rect(last));
}

TEST(PinchSession, DegenerateMoveHasNoLiveRect) {
  PinchSession s;
  s.start(kPinch);
  EXPECT_FALSE(s.move(desk_pinch(Vec3(0, 0, 0.5), Vec3(0, 0, 0.5))).has_value());
  EXPECT_EQ(code_of([&] { s.unpinch(); }), ErrorCode::kDegeneratePinch);
  EXPECT_EQ(s.phase(), PinchSession::Phase::kPinching);
  EXPECT_NO_THROW(s.unpinch(kPinch));
}

TEST(PinchSession, Errors) {
  PinchSession s;
  EXPECT_EQ(code_of([&] { s.unpinch(); }), ErrorCode::kOrphanUnpinch);
  EXPECT_EQ(code_of([&] { s.move(kPinch); }), ErrorCode::kOrphanUnpinch);
  EXPECT_EQ(code_of([&] { s.confirm_embedded(); }), ErrorCode::kNoPendingCapture);
  EXPECT_EQ(s.cancel(), ClockDirective::kNone);
  s.start(kPinch);
  EXPECT_EQ(code_of([&] { s.start(kPinch); }), ErrorCode::kCaptureInProgress);
  EXPECT_EQ(code_of([&] { s.confirm_embedded(); }), ErrorCode::kNoPendingCapture);
  s.unpinch();
  EXPECT_EQ(code_of([&] { s.start(kPinch); }), ErrorCode::kCaptureInProgress);
  EXPECT_EQ(code_of([&] { s.unpinch(); }), ErrorCode::kOrphanUnpinch);
  EXPECT_EQ(s.cancel(), ClockDirective::kResume);
  EXPECT_EQ(s.phase(), PinchSession::Phase::kIdle);
}

TEST(PinchSession, PauseResumePairing) {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    PinchSession s;
    int pauses = 0, resumes = 0;
    for (int step = 0; step < 40; ++step) {
      const int op = static_cast<int>(rng.uniform(0, 5));
      ClockDirective d = ClockDirective::kNone;
      try {
        switch (op) {
          case 0: d = s.start(kPinch); break;
          case 1: s.move(kPinch); break;
          case 2: s.unpinch(); break;
          case 3: d = s.confirm_embedded(); break;
          case 4: d = s.cancel(); break;
        }
      } catch (const Error&) {
      }
      if (d == ClockDirective::kPause) ++pauses;
      if (d == ClockDirective::kResume) ++resumes;
      ASSERT_GE(pauses, resumes);
      ASSERT_LE(pauses - resumes, 1);
    }
    if (s.cancel() == ClockDirective::kResume) ++resumes;
    EXPECT_EQ(pauses, resumes);
    EXPECT_EQ(s.phase(), PinchSession::Phase::kIdle);
  }
}

TEST(PinchSession, RestoreAndPhaseNames) {
  for (auto phase : {PinchSession::Phase::kIdle, PinchSession::Phase::kPinching,
                     PinchSession::Phase::kPending}) {
    EXPECT_EQ(parse_pinch_phase(to_string(phase)), phase);
  }
  const CaptureRect r{-0.4, -0.2, 0.4, 0.2};
  PinchSession s = PinchSession::restore(Slide{}, PinchSession::Phase::kPending, kPinch, r);
  EXPECT_EQ(s.rect(), r);
  EXPECT_EQ(s.confirm_embedded(), ClockDirective::kResume);
}

TEST(Swipe, Directions) {
  EXPECT_EQ(swipe_to_flip(SwipeDirection::kLeft), 1);
  EXPECT_EQ(swipe_to_flip(SwipeDirection::kRight), -1);
  EXPECT_EQ(swipe_to_flip(SwipeDirection::kLeft) + swipe_to_flip(SwipeDirection::kLeft), 2);
  EXPECT_EQ(swipe_to_flip(SwipeDirection::kLeft, false), -1);
  EXPECT_EQ(swipe_to_flip(SwipeDirection::kRight, false), 1);
}

}  // namespace
}  // namespace vrnote
