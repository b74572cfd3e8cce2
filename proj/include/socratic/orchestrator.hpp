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

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "socratic/agents.hpp"
#include "socratic/model.hpp"

namespace socratic {

enum class ActionKind { question, teach, bug_fix_request, terminated };

std::string to_string(ActionKind kind);

// What the tutor says next.
struct InstructorAction {
    ActionKind kind = ActionKind::question;
    std::string text;
    std::optional<QuestionNode> node;
    std::optional<TerminationReason> reason;
};

struct StepResult {
    SessionState state;
    InstructorAction action;
};

// Produces the timestamp for the event with the given sequence number.
using Clock = std::function<std::string(std::int64_t sequence)>;

// 2026-01-01T00:00:00Z plus one second per event. Keeps mock runs byte-stable.
Clock logical_clock();
Clock system_clock();

constexpr const char* kBugFixRequest =
    "Before we continue: which bug fixes have we identified so far? List each fix briefly, "
    "or answer None if there are none yet.";

// Algorithm driver. Every call takes a session by value and returns the new
// one; on any exception the caller's copy is untouched.
class Tutor {
public:
    explicit Tutor(Agents& agents, Clock clock = logical_clock());

    StepResult start_session(std::string session_id, const ProblemBundle& problem, const SessionConfig& config);
    StepResult step(const SessionState& session, const std::string& student_response);
    StepResult submit_bug_fixes(const SessionState& session, const BugFixList& fixes, const std::string& raw_reply = {},
                                bool parse_failed = false);
    // Parses a free-text reply ("None", bug_fix_N lines, a list) first.
    StepResult submit_bug_fix_reply(const SessionState& session, const std::string& reply);

    // The message the student is currently expected to answer.
    static InstructorAction current_action(const SessionState& session);

    Agents& agents() { return agents_; }

private:
    void emit(SessionState& s, EventPayload payload);
    InstructorAction ask_new_tree_or_finish(SessionState& s);
    InstructorAction ask(SessionState& s, const QuestionNode& node);
    InstructorAction teach(SessionState& s, const std::string& misunderstanding);
    InstructorAction terminate(SessionState& s, TerminationReason reason);

    Agents& agents_;
    Clock clock_;
};

// Who answers the tutor in batch runs.
class StudentDriver {
public:
    virtual ~StudentDriver() = default;
    virtual std::string respond(const SessionState& session, const InstructorAction& action) = 0;
    virtual std::string bug_fix_reply(const SessionState& session) = 0;
};

// Answer key: canned responses by question ordinal (1-based, counting teach
// messages), by regex on the instructor text, or a default.
//   {"responses": {"1": "...", "3": "..."},
//    "patterns": [{"match": "regex", "response": "..."}],
//    "bug_fixes": ["None", "bug_fix_1: ..."],   // consumed in order, last repeats
//    "default": "I don't know"}
class ScriptedStudent : public StudentDriver {
public:
    static ScriptedStudent from_json(const Json& j);
    static ScriptedStudent load(const std::string& path);

    std::string respond(const SessionState& session, const InstructorAction& action) override;
    std::string bug_fix_reply(const SessionState& session) override;

private:
    std::map<int, std::string> by_ordinal_;
    std::vector<std::pair<std::regex, std::string>> patterns_;
    std::vector<std::string> bug_fixes_;
    std::string default_ = "I'm not sure.";
};

// Gateway-backed proxy student with the student persona.
class SimulatedStudent : public StudentDriver {
public:
    explicit SimulatedStudent(Agents& agents) : agents_(agents) {}
    std::string respond(const SessionState& session, const InstructorAction& action) override;
    std::string bug_fix_reply(const SessionState& session) override;

private:
    Agents& agents_;
};

TranscriptHeader make_header(const SessionState& session, const std::string& catalog_hash,
                             const std::string& provider_id);
Transcript make_transcript(const SessionState& session, const std::string& catalog_hash,
                           const std::string& provider_id);

// Raised by run_to_completion with everything recorded before the failure.
class SessionAborted : public Error {
public:
    SessionAborted(const std::string& what, Transcript partial) : Error(what), partial_(std::move(partial)) {}
    const Transcript& partial() const { return partial_; }

private:
    Transcript partial_;
};

Transcript run_to_completion(Tutor& tutor, const ProblemBundle& problem, StudentDriver& student,
                             const SessionConfig& config, const std::string& session_id);
// Drives an already started (or resumed) session until it terminates.
Transcript continue_session(Tutor& tutor, SessionState session, StudentDriver& student);

// Continues a session from its last event; the transcript must be replayable.
SessionState resume(const Transcript& transcript);

} // namespace socratic
