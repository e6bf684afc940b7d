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


// Session document: the engine state plus the event log as canonical JSON.
//
// Canonical form: object keys sorted, two-space indentation, integers
// verbatim, floating-point numbers in fixed notation with 3 decimals under
// keys ending in "_mm" or "_s" and 6 decimals otherwise. Equal values always
// produce identical bytes.

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "vrnote/note_engine.hpp"

namespace vrnote {

inline constexpr int kDocumentVersion = 1;

/// Canonical text of `value`. Throws InvalidArgument for non-finite numbers.
std::string canonical_dump(const nlohmann::json& value);

/// Parses then re-reads through canonical_dump, so numbers carry exactly the
/// precision the document format keeps. Throws MalformedDocument on a parse
/// error.
nlohmann::json canonicalize(const nlohmann::json& value);
nlohmann::json parse_document_text(const std::string& text);

nlohmann::json to_json(const NoteState& state);
/// Throws MalformedDocument (with the offending location) or UnknownVersion.
NoteState note_state_from_json(const nlohmann::json& doc);

nlohmann::json stroke_to_json(const Stroke& s);
nlohmann::json picture_to_json(const Picture& p);
nlohmann::json page_to_json(const Page& page);
nlohmann::json pinch_to_json(const PinchPair& pinch);
/// Throws MalformedDocument naming `where` on a bad field.
PinchPair pinch_from_json(const nlohmann::json& j, const std::string& where);

struct SessionDocument {
  NoteState state;
  nlohmann::json events = nlohmann::json::array();
};

/// Canonical document text for a state and its event log.
std::string serialize(const NoteState& state,
                      const nlohmann::json& events = nlohmann::json::array());
SessionDocument deserialize(const std::string& text);

}  // namespace vrnote
