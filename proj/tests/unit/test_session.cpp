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

#include <algorithm>

#include "session_script.hpp"
#include "test_util.hpp"
#include "vrnote/document.hpp"
#include "vrnote/session.hpp"

namespace vrnote {
namespace {

using nlohmann::json;
using testing::code_of;

std::string state_text(const Session& s) { return canonical_dump(to_json(s.state())); }

SessionEvent ev(std::int64_t seq, std::int64_t wall, std::string kind,
                json payload = json::object()) {
  return {seq, wall, std::move(kind), std::move(payload)};
}

TEST(ApplyEvent, StrokeTripleMakesOneStroke) {
  Session s(600);
  EXPECT_TRUE(apply_event(s, ev(1, 0, "stroke-begin", {{"x_mm", 10}, {"y_mm", 20}})).accepted);
  EXPECT_TRUE(apply_event(s, ev(2, 15, "stroke-point", {{"x_mm", 12}, {"y_mm", 21}})).accepted);
  const EventOutcome end = apply_event(s, ev(3, 30, "stroke-end"));
  ASSERT_TRUE(end.accepted);
  EXPECT_EQ(end.result.at("stroke_id"), 1);
  const auto& strokes = s.state().notebook.pages[0].strokes;
  ASSERT_EQ(strokes.size(), 1u);
  EXPECT_EQ(strokes[0].points.size(), 2u);
  EXPECT_EQ(strokes[0].points[1].t_wall_ms, 15);
}

TEST(ApplyEvent, EmptyReviewSelectionRejectedWithoutChange) {
  Session s(600);
  for (const SessionEvent& e : script::Builder()
                                   .add("stroke-begin", {{"x_mm", 10}, {"y_mm", 20}})
                                   .add("stroke-end")
                                   .add("slider-seek", {{"t_s", 42}})
                                   .build()) {
    s.apply(e);
  }
  const std::string before = state_text(s);
  const EventOutcome out = s.apply(ev(4, 0, "review-seek", {{"stroke_ids", json::array()}}));
  EXPECT_FALSE(out.accepted);
  EXPECT_NE(out.reason.find("EmptySelection"), std::string::npos) << out.reason;
  EXPECT_EQ(state_text(s), before);
  EXPECT_EQ(s.log().back().at("status"), "rejected");
  EXPECT_EQ(s.last_seq(), 4);
}

TEST(ApplyEvent, SequenceErrorsAreNotLogged) {
  Session s(600);
  s.apply(ev(1, 0, "clock-play"));
  EXPECT_EQ(code_of([&] { s.apply(ev(3, 0, "clock-pause")); }), ErrorCode::kSequenceGap);
  EXPECT_EQ(code_of([&] { s.apply(ev(1, 0, "clock-pause")); }), ErrorCode::kDuplicateSequence);
  EXPECT_EQ(code_of([&] { s.apply(ev(0, 0, "clock-pause")); }), ErrorCode::kDuplicateSequence);
  EXPECT_EQ(s.log().size(), 1u);
  EXPECT_TRUE(s.apply(ev(2, 0, "clock-pause")).accepted);
}

TEST(ApplyEvent, WallTimeMustNotGoBack) {
  Session s(600);
  s.apply(ev(1, 500, "clock-play"));
  EXPECT_FALSE(s.apply(ev(2, 400, "clock-pause")).accepted);
  EXPECT_TRUE(s.state().clock.playing);
  EXPECT_TRUE(s.apply(ev(3, 500, "clock-pause")).accepted);
}

TEST(ApplyEvent, UnknownAndReservedKinds) {
  Session s(600);
  EventOutcome out = s.apply(ev(1, 0, "juggle"));
  EXPECT_FALSE(out.accepted);
  EXPECT_NE(out.reason.find("Unsupported"), std::string::npos);
  out = s.apply(ev(2, 0, "reference-lookup", {{"query", "pca"}}));
  EXPECT_FALSE(out.accepted);
  EXPECT_NE(out.reason.find("Unsupported"), std::string::npos);
  EXPECT_NE(std::find(event_kinds().begin(), event_kinds().end(), "reference-lookup"),
            event_kinds().end());
}

TEST(ApplyEvent, BadPayloadRejected) {
  Session s(600);
  EXPECT_FALSE(s.apply(ev(1, 0, "stroke-begin", {{"x_mm", "ten"}, {"y_mm", 1}})).accepted);
  EXPECT_FALSE(s.apply(ev(2, 0, "stroke-begin", {{"y_mm", 1}})).accepted);
  EXPECT_FALSE(s.apply(ev(3, 0, "swipe", {{"direction", "up"}})).accepted);
  EXPECT_FALSE(s.apply(ev(4, 0, "tool-cycle", {{"direction", 1}})).accepted);
  EXPECT_FALSE(s.apply(ev(5, 0, "glue-sketch", {{"points_mm", {1, 2}}})).accepted);
  EXPECT_TRUE(s.state().notebook.pages[0].strokes.empty());
}

TEST(ApplyEvent, CaptureDirectives) {
  Session s(600);
  s.apply(ev(1, 0, "clock-play"));
  EventOutcome out = s.apply(ev(2, 1000, "pinch-start", script::pinch(-0.1, -0.05, 0.1, 0.05)));
  EXPECT_EQ(out.result.at("clock"), "pause");
  EXPECT_FALSE(s.state().clock.playing);
  out = s.apply(ev(3, 2000, "review-seek", {{"stroke_ids", {1}}}));
  EXPECT_FALSE(out.accepted);
  out = s.apply(ev(4, 3000, "unpinch"));
  ASSERT_TRUE(out.accepted);
  EXPECT_NEAR(out.result.at("rect").at("u_min_m").get<double>(), -0.4, 1e-9);
  s.apply(ev(5, 3000, "tool-cycle", {{"direction", "back"}}));
  s.apply(ev(6, 3000, "tool-cycle", {{"direction", "back"}}));
  out = s.apply(ev(7, 4000, "glue-sketch", {{"points_mm", {{10, 20}, {60, 50}}}}));
  ASSERT_TRUE(out.accepted) << out.reason;
  EXPECT_EQ(out.result.at("clock"), "resume");
  EXPECT_TRUE(s.state().clock.playing);
  const Picture& pic = s.state().notebook.pages[0].pictures.at(0);
  EXPECT_EQ(pic.t_lecture_s, 1.0);
  EXPECT_EQ(pic.bbox_mm, (RectMm{10, 20, 60, 50}));
}

TEST(ApplyEvent, EventJsonRoundTrip) {
  const SessionEvent e = ev(7, 1250, "stroke-point", {{"x_mm", 31.5}, {"y_mm", 40.25}});
  const json j = e.to_json();
  EXPECT_EQ(j.at("seq"), 7);
  EXPECT_EQ(j.at("t_wall_ms"), 1250);
  EXPECT_EQ(j.at("kind"), "stroke-point");
  const SessionEvent back = SessionEvent::from_json(j);
  EXPECT_EQ(back.seq, 7);
  EXPECT_EQ(back.payload, e.payload);
  EXPECT_EQ(code_of([] { SessionEvent::from_json(json{{"seq", "x"}, {"kind", "a"}}); }),
            ErrorCode::kMalformedDocument);
  EXPECT_EQ(code_of([] { SessionEvent::from_json(json::array()); }),
            ErrorCode::kMalformedDocument);
}

TEST(ApplyEvent, RejectedEventsNeverMutate) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Session s(600);
    int rejected = 0;
    for (const SessionEvent& e : script::random_events(seed, 200)) {
      const std::string before = state_text(s);
      const EventOutcome out = s.apply(e);
      if (!out.accepted) {
        ++rejected;
        ASSERT_EQ(state_text(s), before) << "seed " << seed << " seq " << e.seq;
      }
    }
    EXPECT_GT(rejected, 0);
  }
}

TEST(Replay, FreshExportMatches) {
  Session s(600);
  for (const SessionEvent& e : script::lecture()) s.apply(e);
  const std::string doc = s.export_document();
  const ReplayResult r = replay_document(doc);
  EXPECT_TRUE(r.consistent) << r.detail;
  EXPECT_FALSE(r.divergent_seq.has_value());
  EXPECT_EQ(r.session.export_document(), doc);
  EXPECT_NO_THROW(replay(doc));
}

TEST(Replay, FoldOfRandomLogsMatches) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    Session s(600);
    for (const SessionEvent& e : script::random_events(seed, 250)) s.apply(e);
    const std::string doc = s.export_document();
    const ReplayResult r = replay_document(doc);
    ASSERT_TRUE(r.consistent) << "seed " << seed << ": " << r.detail;
    ASSERT_EQ(r.session.export_document(), doc);
  }
}

TEST(Replay, EmptyEventList) {
  const Session s(300);
  const Session back = replay(s.export_document());
  EXPECT_EQ(back.state().notebook, Notebook{});
  EXPECT_EQ(back.last_seq(), 0);
}

TEST(Replay, EditedTimestampIsIntegrityMismatch) {
  Session s(600);
  for (const SessionEvent& e : script::lecture()) s.apply(e);
  json doc = json::parse(s.export_document());
  json& stroke = doc["pages"][0]["strokes"][0];
  const EntityId id = stroke.at("id").get<EntityId>();
  stroke["points"][0]["t_lecture_s"] = stroke["points"][0]["t_lecture_s"].get<double>() + 1.0;
  const std::string text = canonical_dump(doc);

  const ReplayResult r = replay_document(text);
  EXPECT_FALSE(r.consistent);
  ASSERT_TRUE(r.divergent_seq.has_value());
  EXPECT_EQ(*r.divergent_seq, *r.session.last_touch(id));
  try {
    replay(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIntegrityMismatch);
    EXPECT_NE(std::string(e.what()).find("first divergent seq " + std::to_string(*r.divergent_seq)),
              std::string::npos);
  }
}

TEST(Replay, EditedEventIsLocated) {
  Session s(600);
  for (const SessionEvent& e : script::lecture()) s.apply(e);
  json doc = json::parse(s.export_document());
  // Event 3 is the second stroke-point; moving it changes only that stroke.
  ASSERT_EQ(doc["events"][2]["kind"], "stroke-point");
  doc["events"][2]["payload"]["x_mm"] = 99.0;
  const ReplayResult r = replay_document(canonical_dump(doc));
  EXPECT_FALSE(r.consistent);
  ASSERT_TRUE(r.divergent_seq.has_value());
  EXPECT_LE(*r.divergent_seq, 12);

  json flipped = json::parse(s.export_document());
  // Status flip on a rejected event: divergence is exactly that seq.
  json& events = flipped["events"];
  const auto it = std::find_if(events.begin(), events.end(),
                               [](const json& e) { return e.at("status") == "rejected"; });
  ASSERT_NE(it, events.end());
  (*it)["status"] = "accepted";
  const std::int64_t seq = it->at("seq").get<std::int64_t>();
  const ReplayResult r2 = replay_document(canonical_dump(flipped));
  EXPECT_EQ(r2.divergent_seq, seq);
}

}  // namespace
}  // namespace vrnote
