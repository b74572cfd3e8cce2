/*
 * Copyright 2026 The socratic-debug Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <string_view>

#include "socratic/model.hpp"

// Canonical JSON form of the domain types. Object keys come out sorted, so a
// given value always serializes to the same bytes.
namespace socratic {

void to_json(Json& j, const BugRecord& v);
void to_json(Json& j, const ProblemBundle& v);
void to_json(Json& j, const StateVariable& v);
void to_json(Json& j, const StateSpace& v);
void to_json(Json& j, const QuestionNode& v);
void to_json(Json& j, const QuestionTree& v);
void to_json(Json& j, const Verdict& v);
void to_json(Json& j, const Turn& v);
void to_json(Json& j, const BugFixList& v);
void to_json(Json& j, const FixMatch& v);
void to_json(Json& j, const IsomorphismVerdict& v);
void to_json(Json& j, const SessionConfig& v);
void to_json(Json& j, const SessionEvent& v);
void to_json(Json& j, const SessionState& v);
void to_json(Json& j, const TranscriptHeader& v);
void to_json(Json& j, const Transcript& v);

void from_json(const Json& j, StateVariable& v);
void from_json(const Json& j, StateSpace& v);
void from_json(const Json& j, QuestionNode& v);
void from_json(const Json& j, QuestionTree& v);
void from_json(const Json& j, Verdict& v);
void from_json(const Json& j, Turn& v);
void from_json(const Json& j, BugFixList& v);
void from_json(const Json& j, FixMatch& v);
void from_json(const Json& j, IsomorphismVerdict& v);
void from_json(const Json& j, SessionEvent& v);
void from_json(const Json& j, SessionState& v);
void from_json(const Json& j, TranscriptHeader& v);
void from_json(const Json& j, Transcript& v);

// Strict parse with field paths in errors (SchemaError). Unknown keys land in
// ProblemBundle::extra.
ProblemBundle problem_from_json(const Json& j, const std::string& path = {});

// Partial overrides on top of `base`; unknown keys are a ConfigError.
SessionConfig config_from_json(const Json& j, SessionConfig base = {});

// SessionState without the event array (used for transcript final_state).
Json state_snapshot_json(const SessionState& state);

std::string to_string(NodeKind kind);
std::string to_string(SessionStatus status);
std::string to_string(TerminationReason reason);
std::string to_string(BugKind kind);

std::string transcript_to_string(const Transcript& transcript);
// Throws CorruptTranscriptError on malformed input.
Transcript transcript_from_string(std::string_view text);

} // namespace socratic
