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
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace socratic {

using Json = nlohmann::json;

enum class BugKind { syntactical, conceptual };

struct BugRecord {
    std::string description;
    std::string fix;
    std::optional<BugKind> kind;

    bool operator==(const BugRecord&) const = default;
};

// Everything the tutor knows about one exercise: problem text, the student's
// buggy program, the ground-truth bugs with their fixes, and the corrected code.
struct ProblemBundle {
    std::string id;
    std::string base_id;
    std::string problem_statement;
    std::string buggy_code;
    std::vector<BugRecord> bugs;
    std::string correct_code;
    int num_bugs = 0;
    // Fields we do not model, carried through load/save untouched.
    Json extra = Json::object();

    bool operator==(const ProblemBundle&) const = default;
};

// Throws InvalidProblemError naming the first broken invariant.
void validate_problem(const ProblemBundle& problem);

struct StateVariable {
    int index = 1;
    std::string task;
    bool resolved = false;

    bool operator==(const StateVariable&) const = default;
};

// Ordered debugging plan. Lower ordinals have higher priority.
struct StateSpace {
    std::vector<StateVariable> variables;

    static StateSpace from_tasks(const std::vector<std::string>& tasks);

    std::size_t size() const { return variables.size(); }
    bool all_resolved() const;
    bool is_resolved(int index) const;
    const StateVariable& at(int index) const;
    StateVariable& at(int index);
    std::vector<int> unresolved_indices() const;

    bool operator==(const StateSpace&) const = default;
};

std::optional<StateVariable> target_variable(const StateSpace& state_space);

enum class NodeKind { initial, sibling, child, teach };

struct QuestionNode {
    std::string node_id;
    int level = 0;
    std::string text;
    NodeKind kind = NodeKind::initial;
    int target_variable_index = 1;
    // Set when the text still contained a ground-truth fix after regeneration.
    bool leak_flagged = false;

    bool operator==(const QuestionNode&) const = default;
};

struct QuestionTree {
    int target_variable_index = 1;
    std::map<int, std::vector<QuestionNode>> levels;
    int current_level = 0;

    bool empty() const { return levels.empty(); }
    // Number of non-teach nodes at a level.
    int width(int level) const;
    int depth() const { return levels.empty() ? 0 : levels.rbegin()->first + 1; }
    const std::vector<QuestionNode>& level_nodes(int level) const;
    // Non-teach nodes of the current level, in the order they were asked.
    std::vector<QuestionNode> current_questions() const;

    bool operator==(const QuestionTree&) const = default;
};

// Pure insertion; throws PlacementError when kind and position disagree.
QuestionTree add_question(const QuestionTree& tree, const QuestionNode& node);

struct Verdict {
    bool addresses_question = false;
    bool has_no_mistakes = false;
    std::string explanation;

    bool correct() const { return addresses_question && has_no_mistakes; }
    bool operator==(const Verdict&) const = default;
};

struct Turn {
    QuestionNode question;
    std::string student_response;
    std::optional<Verdict> verdict;

    bool operator==(const Turn&) const = default;
};

struct BugFixList {
    std::vector<std::string> fixes;

    // Trims every entry and drops blank ones.
    static BugFixList from(const std::vector<std::string>& raw);
    bool empty() const { return fixes.empty(); }
    bool operator==(const BugFixList&) const = default;
};

struct FixMatch {
    std::string truth_fix;
    bool matched = false;
    std::string explanation;

    bool operator==(const FixMatch&) const = default;
};

struct IsomorphismVerdict {
    bool all_covered = false;
    std::vector<FixMatch> per_truth_fix;

    bool operator==(const IsomorphismVerdict&) const = default;
};

enum class SessionStatus { awaiting_response, awaiting_bug_fixes, terminated };
enum class TerminationReason { all_fixes_isomorphic, all_tasks_resolved, turn_cap_reached };
enum class SweepMode { on_resolve, always };

struct SessionConfig {
    int teach_after = 3;
    int max_depth = 5;
    int max_width = 5;
    int max_turns_per_bug = 20;
    bool no_teaching = false;
    bool no_state = false;
    SweepMode sweep_mode = SweepMode::on_resolve;

    int turn_cap(int num_bugs) const { return max_turns_per_bug * num_bugs; }
    bool operator==(const SessionConfig&) const = default;
};

// ---- events ---------------------------------------------------------------

struct StateEstimated {
    std::vector<std::string> tasks;
    bool synthetic = false;
    bool operator==(const StateEstimated&) const = default;
};
struct QuestionAsked {
    QuestionNode node;
    bool operator==(const QuestionAsked&) const = default;
};
struct ResponseReceived {
    std::string text;
    bool operator==(const ResponseReceived&) const = default;
};
struct ResponseVerified {
    Verdict verdict;
    bool correct = false;
    bool operator==(const ResponseVerified&) const = default;
};
struct UnderstandingUpdated {
    std::vector<int> checked;
    std::vector<int> demonstrated;
    std::string explanation;
    bool operator==(const UnderstandingUpdated&) const = default;
};
struct TaskResolved {
    int index = 0;
    bool operator==(const TaskResolved&) const = default;
};
struct NewTreeStarted {
    int target = 0;
    bool operator==(const NewTreeStarted&) const = default;
};
struct BugFixesCollected {
    BugFixList fixes;
    std::string raw_reply;
    bool parse_failed = false;
    bool operator==(const BugFixesCollected&) const = default;
};
struct ResolutionChecked {
    IsomorphismVerdict verdict;
    // True when the fix list was unchanged and the previous verdict was reused.
    bool reused = false;
    bool operator==(const ResolutionChecked&) const = default;
};
struct TeachingDelivered {
    QuestionNode node;
    std::string model_answer;
    bool operator==(const TeachingDelivered&) const = default;
};
struct Terminated {
    TerminationReason reason = TerminationReason::all_tasks_resolved;
    // Only filled for turn-cap terminations; not part of the tutoring algorithm.
    std::string summary;
    bool operator==(const Terminated&) const = default;
};

using EventPayload = std::variant<StateEstimated, QuestionAsked, ResponseReceived, ResponseVerified,
                                  UnderstandingUpdated, TaskResolved, NewTreeStarted, BugFixesCollected,
                                  ResolutionChecked, TeachingDelivered, Terminated>;

std::string event_type_name(const EventPayload& payload);

struct SessionEvent {
    std::int64_t sequence = 0;
    std::string timestamp;
    EventPayload payload;

    bool operator==(const SessionEvent&) const = default;
};

struct SessionState {
    std::string session_id;
    ProblemBundle problem;
    SessionConfig config;
    StateSpace state_space;
    QuestionTree tree;
    std::vector<Turn> history;
    BugFixList collected_fixes;
    std::optional<QuestionNode> pending_question;
    int consecutive_incorrect = 0;
    int total_turns = 0;
    SessionStatus status = SessionStatus::awaiting_response;
    std::optional<TerminationReason> termination_reason;

    // Verifier explanations for wrong answers at the current level, oldest first.
    std::vector<std::string> level_misunderstandings;
    // Latest explanation of why the target is still unresolved.
    std::string gap_explanation;
    std::optional<IsomorphismVerdict> last_resolution;
    std::vector<SessionEvent> events;

    int turn_cap() const { return config.turn_cap(problem.num_bugs); }
    bool operator==(const SessionState&) const = default;
};

// Fresh session before any event has been applied.
SessionState initial_session(std::string session_id, ProblemBundle problem, SessionConfig config);

// The single state-transition function. Live sessions and replay both go
// through it. Throws CorruptTranscriptError if the event is out of order.
void apply_event(SessionState& state, const SessionEvent& event);

// Empty tree for the next target; history is kept.
SessionState reset_tree(const SessionState& session, int next_target);

struct TranscriptHeader {
    std::string session_id;
    std::string problem_id;
    ProblemBundle problem;
    SessionConfig config;
    std::string template_catalog_hash;
    std::string provider_id;

    bool operator==(const TranscriptHeader&) const = default;
};

inline constexpr int kTranscriptFormatVersion = 1;

struct Transcript {
    int format_version = kTranscriptFormatVersion;
    TranscriptHeader header;
    std::vector<SessionEvent> events;
    std::optional<SessionState> final_state;

    bool operator==(const Transcript&) const = default;
};

// Folds the event stream over initial_session(). Checks sequence contiguity.
SessionState replay(const Transcript& transcript);

} // namespace socratic
