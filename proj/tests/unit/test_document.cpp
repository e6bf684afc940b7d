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
#include <limits>

#include "session_script.hpp"
#include "test_util.hpp"
#include "vrnote/document.hpp"
#include "vrnote/session.hpp"

namespace vrnote {
namespace {

using nlohmann::json;
using testing::code_of;

std::string lecture_document() {
  Session s(600);
  for (const SessionEvent& e : script::lecture()) s.apply(e);
  return s.export_document();
}

TEST(CanonicalDump, SortedKeysAndFixedDecimals) {
  const json j = {{"x_mm", 1.5}, {"a", 0.1234567}, {"n", 3}, {"t_s", 2.0},
                  {"z_mm", -0.0001}, {"ok", true}, {"name", "pen"}};
  EXPECT_EQ(canonical_dump(j),
            "{\n"
            "  \"a\": 0.123457,\n"
            "  \"n\": 3,\n"
            "  \"name\": \"pen\",\n"
            "  \"ok\": true,\n"
            "  \"t_s\": 2.000,\n"
            "  \"x_mm\": 1.500,\n"
            "  \"z_mm\": 0.000\n"
            "}\n");
}

TEST(CanonicalDump, ArraysInheritTheirKeyPrecision) {
  const json j = {{"points_mm", {{1.0, 2.25}}}, {"center_m", {0.5, 1.0}}};
  EXPECT_EQ(canonical_dump(j),
            "{\n"
            "  \"center_m\": [\n"
            "    0.500000,\n"
            "    1.000000\n"
            "  ],\n"
            "  \"points_mm\": [\n"
            "    [\n"
            "      1.000,\n"
            "      2.250\n"
            "    ]\n"
            "  ]\n"
            "}\n");
  EXPECT_EQ(canonical_dump(json::object()), "{}\n");
}

TEST(CanonicalDump, RejectsNonFinite) {
  EXPECT_EQ(code_of([] { canonical_dump(json{{"x", std::nan("")}}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] {
              canonical_dump(json{{"x", std::numeric_limits<double>::infinity()}});
            }),
            ErrorCode::kInvalidArgument);
}

TEST(Document, RoundTripIsByteIdentical) {
  const std::string first = lecture_document();
  const SessionDocument doc = deserialize(first);
  EXPECT_EQ(serialize(doc.state, doc.events), first);
}

TEST(Document, RoundTripRandomSessions) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Session s(600);
    for (const SessionEvent& e : script::random_events(seed, 150)) s.apply(e);
    const std::string first = s.export_document();
    const SessionDocument doc = deserialize(first);
    ASSERT_EQ(serialize(doc.state, doc.events), first) << "seed " << seed;
    EXPECT_EQ(doc.state.notebook, s.state().notebook);
    EXPECT_EQ(doc.state.clock, s.state().clock);
    EXPECT_EQ(doc.state.selection, s.state().selection);
    EXPECT_EQ(doc.state.active_stroke, s.state().active_stroke);
  }
}

TEST(Document, EmptyNotebookIsMinimal) {
  const NoteEngine e(90);
  const json j = json::parse(serialize(e.state()));
  EXPECT_EQ(j.at("version"), kDocumentVersion);
  EXPECT_EQ(j.at("lecture").at("duration_s").get<double>(), 90.0);
  ASSERT_EQ(j.at("pages").size(), 1u);
  EXPECT_TRUE(j.at("pages")[0].at("strokes").empty());
  EXPECT_TRUE(j.at("pages")[0].at("pictures").empty());
  EXPECT_TRUE(j.at("events").empty());
  EXPECT_EQ(j.at("tool"), "stylus");
  EXPECT_TRUE(j.at("active_stroke").is_null());
}

TEST(Document, TopLevelSchema) {
  const json j = json::parse(lecture_document());
  for (const char* key : {"version", "lecture", "config", "clock", "tool", "current_page",
                          "next_id", "selection", "active_stroke", "capture", "pages", "events"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  const json& stroke = j.at("pages")[0].at("strokes")[0];
  for (const char* key : {"id", "tool", "width_mm", "page_index", "points"}) {
    EXPECT_TRUE(stroke.contains(key)) << key;
  }
  for (const char* key : {"x_mm", "y_mm", "t_lecture_s", "t_wall_ms"}) {
    EXPECT_TRUE(stroke.at("points")[0].contains(key)) << key;
  }
  const json& pic = j.at("pages")[0].at("pictures")[0];
  for (const char* key : {"id", "crop", "bbox_mm", "t_lecture_s"}) {
    EXPECT_TRUE(pic.contains(key)) << key;
  }
  for (const json& e : j.at("events")) {
    for (const char* key : {"seq", "t_wall_ms", "kind", "payload", "status"}) {
      EXPECT_TRUE(e.contains(key)) << key;
    }
  }
}

TEST(Document, TruncatedIsMalformed) {
  const std::string text = lecture_document();
  for (std::size_t cut : {std::size_t{0}, std::size_t{1}, text.size() / 3, text.size() - 3}) {
    EXPECT_EQ(code_of([&] { deserialize(text.substr(0, cut)); }), ErrorCode::kMalformedDocument)
        << cut;
  }
}

TEST(Document, MissingFieldNamesLocation) {
  json j = json::parse(lecture_document());
  j["pages"][0]["strokes"][0]["points"][0].erase("t_lecture_s");
  try {
    deserialize(j.dump());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedDocument);
    EXPECT_NE(std::string(e.what()).find("$.pages[0].strokes[0].points[0].t_lecture_s"),
              std::string::npos)
        << e.what();
  }
}

TEST(Document, WrongTypesAreMalformed) {
  const json base = json::parse(lecture_document());
  json j = base;
  j["tool"] = "pencil";
  EXPECT_EQ(code_of([&] { deserialize(j.dump()); }), ErrorCode::kMalformedDocument);
  j = base;
  j["clock"]["position_s"] = "soon";
  EXPECT_EQ(code_of([&] { deserialize(j.dump()); }), ErrorCode::kMalformedDocument);
  j = base;
  j["current_page"] = 7;
  EXPECT_EQ(code_of([&] { deserialize(j.dump()); }), ErrorCode::kMalformedDocument);
  EXPECT_EQ(code_of([&] { deserialize("[1, 2]"); }), ErrorCode::kMalformedDocument);
}

TEST(Document, UnknownVersion) {
  json j = json::parse(lecture_document());
  j["version"] = 2;
  EXPECT_EQ(code_of([&] { deserialize(j.dump()); }), ErrorCode::kUnknownVersion);
}

TEST(Document, PinchJsonRoundTrip) {
  PinchPair p;
  p.left_pinch = Vec3(-0.1, -0.05, 0.5);
  p.right_pinch = Vec3(0.1, 0.05, 0.5);
  p.head.eye = Vec3(0, 0.1, 0);
  const PinchPair q = pinch_from_json(pinch_to_json(p), "$");
  EXPECT_EQ(q.left_pinch, p.left_pinch);
  EXPECT_EQ(q.head.eye, p.head.eye);
  EXPECT_EQ(code_of([] { pinch_from_json(json{{"left_m", {1, 2}}}, "$"); }),
            ErrorCode::kMalformedDocument);
}

}  // namespace
}  // namespace vrnote
