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


// Event-sourced session: every user action is a SessionEvent applied in seq
// order to a NoteEngine; the state is always the fold of the event log.
//
// Wire format of an event:
//
//   {"seq": 7, "t_wall_ms": 1250, "kind": "stroke-point",
//    "payload": {"x_mm": 31.5, "y_mm": 40.25}}
//
// In an exported document each event additionally carries
// "status": "accepted" | "rejected" and, when rejected, "reason".

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrnote/document.hpp"
#include "vrnote/note_engine.hpp"

namespace vrnote {

/// Every accepted `kind`, including the reserved "reference-lookup" (always
/// rejected as Unsupported).
const std::vector<std::string>& event_kinds();

struct SessionEvent {
  std::int64_t seq = 0;
  std::int64_t t_wall_ms = 0;  // ms since session start
  std::string kind;
  nlohmann::json payload = nlohmann::json::object();

  nlohmann::json to_json() const;
  /// Throws MalformedDocument when seq, t_wall_ms, kind or payload has the
  /// wrong type. Unknown kinds parse and are rejected at apply time.
  static SessionEvent from_json(const nlohmann::json& j);
};

struct EventOutcome {
  std::int64_t seq = 0;
  bool accepted = false;
  std::string reason;      // error text when rejected
  std::string diagnostic;  // e.g. a point clamped to the page
  nlohmann::json result;   // kind-specific data for the client

  nlohmann::json to_json() const;
};

class Session {
 public:
  explicit Session(double duration_s, NoteConfig config = {});

  /// Applies the event if e.seq == last_seq() + 1. Throws DuplicateSequence
  /// for an already applied seq and SequenceGap for a skipped one; neither
  /// is logged. Any other failure is logged as rejected and leaves the state
  /// untouched.
  EventOutcome apply(const SessionEvent& event);

  const NoteEngine& engine() const { return engine_; }
  const NoteState& state() const { return engine_.state(); }
  std::int64_t last_seq() const { return last_seq_; }
  std::int64_t last_wall_ms() const { return last_wall_ms_; }
  /// Logged events in canonical form, each with its status.
  const nlohmann::json& log() const { return log_; }

  std::string export_document() const;

  /// Seq of the last accepted event that changed the given entity or
  /// top-level state field; used to locate replay divergence.
  std::optional<std::int64_t> last_touch(EntityId id) const;
  std::optional<std::int64_t> last_touch(const std::string& field) const;

 private:
  nlohmann::json dispatch(const SessionEvent& e, EventOutcome& outcome);
  void record_touches(const NoteState& before, const nlohmann::json& result,
                      const SessionEvent& e);

  NoteEngine engine_;
  std::int64_t last_seq_ = 0;
  std::int64_t last_wall_ms_ = 0;
  nlohmann::json log_ = nlohmann::json::array();
  std::map<EntityId, std::int64_t> entity_touch_;
  std::map<std::string, std::int64_t> field_touch_;
};

/// Free-function form of Session::apply.
EventOutcome apply_event(Session& session, const SessionEvent& event);

struct ReplayResult {
  Session session;
  bool consistent = true;
  std::optional<std::int64_t> divergent_seq;
  std::string detail;
};

/// Folds the document's event log over an empty session with the
/// document's configuration and compares the result with the stored state.
/// Never throws on a mismatch; see replay().
ReplayResult replay_document(const std::string& text);

/// As replay_document but throws IntegrityMismatch naming the first
/// divergent seq.
Session replay(const std::string& text);

}  // namespace vrnote
