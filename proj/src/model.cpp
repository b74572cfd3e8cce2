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

#include "socratic/model.hpp"

#include <algorithm>
#include <string_view>

#include "socratic/errors.hpp"
#include "socratic/text.hpp"

namespace socratic {

void validate_problem(const ProblemBundle& problem) {
    if (problem.bugs.empty()) {
        throw InvalidProblemError("problem '" + problem.id + "' has no bugs");
    }
    if (problem.num_bugs != static_cast<int>(problem.bugs.size())) {
        throw InvalidProblemError("problem '" + problem.id + "' declares num_bugs=" +
                                  std::to_string(problem.num_bugs) + " but lists " +
                                  std::to_string(problem.bugs.size()) + " bugs");
    }
    for (std::size_t i = 0; i < problem.bugs.size(); ++i) {
        const auto& bug = problem.bugs[i];
        if (text::trim(bug.description).empty() || text::trim(bug.fix).empty()) {
            throw InvalidProblemError("problem '" + problem.id + "' bug " + std::to_string(i + 1) +
                                      " needs a non-empty description and fix");
        }
    }
}

StateSpace StateSpace::from_tasks(const std::vector<std::string>& tasks) {
    StateSpace space;
    int index = 1;
    for (const auto& task : tasks) {
        space.variables.push_back({index++, task, false});
    }
    return space;
}

bool StateSpace::all_resolved() const {
    return std::all_of(variables.begin(), variables.end(), [](const auto& v) { return v.resolved; });
}

bool StateSpace::is_resolved(int index) const { return at(index).resolved; }

const StateVariable& StateSpace::at(int index) const {
    if (index < 1 || index > static_cast<int>(variables.size())) {
        throw Error("state variable ordinal " + std::to_string(index) + " out of range");
    }
    return variables[static_cast<std::size_t>(index - 1)];
}

StateVariable& StateSpace::at(int index) {
    return const_cast<StateVariable&>(std::as_const(*this).at(index));
}

std::vector<int> StateSpace::unresolved_indices() const {
    std::vector<int> out;
    for (const auto& v : variables) {
        if (!v.resolved) out.push_back(v.index);
    }
    return out;
}

std::optional<StateVariable> target_variable(const StateSpace& state_space) {
    for (const auto& v : state_space.variables) {
        if (!v.resolved) return v;
    }
    return std::nullopt;
}

int QuestionTree::width(int level) const {
    auto it = levels.find(level);
    if (it == levels.end()) return 0;
    return static_cast<int>(std::count_if(it->second.begin(), it->second.end(),
                                          [](const auto& n) { return n.kind != NodeKind::teach; }));
}

const std::vector<QuestionNode>& QuestionTree::level_nodes(int level) const {
    static const std::vector<QuestionNode> none;
    auto it = levels.find(level);
    return it == levels.end() ? none : it->second;
}

std::vector<QuestionNode> QuestionTree::current_questions() const {
    std::vector<QuestionNode> out;
    for (const auto& node : level_nodes(current_level)) {
        if (node.kind != NodeKind::teach) out.push_back(node);
    }
    return out;
}

QuestionTree add_question(const QuestionTree& tree, const QuestionNode& node) {
    if (node.target_variable_index != tree.target_variable_index) {
        throw PlacementError("node targets variable " + std::to_string(node.target_variable_index) +
                             " but tree targets " + std::to_string(tree.target_variable_index));
    }
    QuestionTree out = tree;
    switch (node.kind) {
    case NodeKind::initial:
        if (!tree.empty() || node.level != 0) {
            throw PlacementError("initial question must be the level-0 root of an empty tree");
        }
        out.current_level = 0;
        break;
    case NodeKind::sibling:
    case NodeKind::teach:
        if (tree.empty() || node.level != tree.current_level) {
            throw PlacementError("sibling and teach nodes must sit on the current level " +
                                 std::to_string(tree.current_level));
        }
        break;
    case NodeKind::child:
        if (tree.empty() || node.level != tree.current_level + 1) {
            throw PlacementError("child node must sit one level below the current level " +
                                 std::to_string(tree.current_level));
        }
        out.current_level = node.level;
        break;
    }
    out.levels[node.level].push_back(node);
    return out;
}

BugFixList BugFixList::from(const std::vector<std::string>& raw) {
    BugFixList list;
    for (const auto& fix : raw) {
        auto trimmed = text::trim(fix);
        if (!trimmed.empty()) list.fixes.emplace_back(trimmed);
    }
    return list;
}

std::string event_type_name(const EventPayload& payload) {
    static constexpr std::string_view names[] = {
        "StateEstimated",    "QuestionAsked", "ResponseReceived",  "ResponseVerified",
        "UnderstandingUpdated", "TaskResolved", "NewTreeStarted", "BugFixesCollected",
        "ResolutionChecked", "TeachingDelivered", "Terminated"};
    static_assert(std::size(names) == std::variant_size_v<EventPayload>);
    return std::string(names[payload.index()]);
}

SessionState initial_session(std::string session_id, ProblemBundle problem, SessionConfig config) {
    SessionState state;
    state.session_id = std::move(session_id);
    state.problem = std::move(problem);
    state.config = config;
    return state;
}

SessionState reset_tree(const SessionState& session, int next_target) {
    SessionState out = session;
    out.tree = QuestionTree{};
    out.tree.target_variable_index = next_target;
    out.consecutive_incorrect = 0;
    out.level_misunderstandings.clear();
    out.gap_explanation.clear();
    return out;
}

namespace {

[[noreturn]] void corrupt(const SessionEvent& event, const std::string& why) {
    throw CorruptTranscriptError("event " + std::to_string(event.sequence) + " (" +
                                 event_type_name(event.payload) + "): " + why);
}

struct Reducer {
    SessionState& s;
    const SessionEvent& ev;

    void require_open() const {
        if (s.status == SessionStatus::terminated) corrupt(ev, "session already terminated");
    }

    void ask(const QuestionNode& node) {
        require_open();
        if (s.state_space.size() == 0) corrupt(ev, "question before state estimation");
        if (s.pending_question) corrupt(ev, "previous question still unanswered");
        try {
            s.tree = add_question(s.tree, node);
        } catch (const PlacementError& e) {
            corrupt(ev, e.what());
        }
        s.pending_question = node;
        s.status = SessionStatus::awaiting_response;
    }

    void operator()(const StateEstimated& e) {
        if (!s.events.empty() || s.state_space.size() != 0) corrupt(ev, "state estimated twice");
        if (e.tasks.empty()) corrupt(ev, "empty state space");
        s.state_space = StateSpace::from_tasks(e.tasks);
        s.tree = QuestionTree{};
        s.tree.target_variable_index = 1;
    }
    void operator()(const QuestionAsked& e) {
        if (e.node.kind == NodeKind::teach) corrupt(ev, "teach node delivered as a question");
        ask(e.node);
        if (e.node.kind == NodeKind::child) {
            s.consecutive_incorrect = 0;
            s.level_misunderstandings.clear();
        }
    }
    void operator()(const TeachingDelivered& e) {
        if (e.node.kind != NodeKind::teach) corrupt(ev, "teaching must carry a teach node");
        ask(e.node);
        s.consecutive_incorrect = 0;
    }
    void operator()(const ResponseReceived& e) {
        require_open();
        if (!s.pending_question || s.status != SessionStatus::awaiting_response) {
            corrupt(ev, "response without a pending question");
        }
        s.history.push_back({*s.pending_question, e.text, std::nullopt});
        s.pending_question.reset();
        ++s.total_turns;
    }
    void operator()(const ResponseVerified& e) {
        require_open();
        if (s.history.empty() || s.history.back().verdict) corrupt(ev, "no unverified turn");
        if (e.correct != e.verdict.correct()) corrupt(ev, "correct flag disagrees with verdict");
        s.history.back().verdict = e.verdict;
        if (e.correct) {
            s.consecutive_incorrect = 0;
        } else {
            ++s.consecutive_incorrect;
            s.level_misunderstandings.push_back(e.verdict.explanation);
        }
    }
    void operator()(const UnderstandingUpdated& e) {
        require_open();
        for (int idx : e.checked) {
            if (idx < 1 || idx > static_cast<int>(s.state_space.size())) corrupt(ev, "ordinal out of range");
        }
        s.gap_explanation = e.explanation;
    }
    void operator()(const TaskResolved& e) {
        require_open();
        if (e.index < 1 || e.index > static_cast<int>(s.state_space.size())) corrupt(ev, "ordinal out of range");
        if (s.state_space.at(e.index).resolved) corrupt(ev, "task resolved twice");
        s.state_space.at(e.index).resolved = true;
        if (e.index == s.tree.target_variable_index) s.status = SessionStatus::awaiting_bug_fixes;
    }
    void operator()(const BugFixesCollected& e) {
        require_open();
        if (s.status != SessionStatus::awaiting_bug_fixes) corrupt(ev, "bug fixes were not requested");
        s.collected_fixes = e.fixes;
    }
    void operator()(const ResolutionChecked& e) {
        require_open();
        s.last_resolution = e.verdict;
    }
    void operator()(const NewTreeStarted& e) {
        require_open();
        if (!s.state_space.is_resolved(s.tree.target_variable_index)) {
            corrupt(ev, "new tree before the previous target was resolved");
        }
        if (e.target < 1 || e.target > static_cast<int>(s.state_space.size()) ||
            s.state_space.is_resolved(e.target)) {
            corrupt(ev, "new tree must target an unresolved variable");
        }
        s = reset_tree(s, e.target);
    }
    void operator()(const Terminated& e) {
        require_open();
        s.status = SessionStatus::terminated;
        s.termination_reason = e.reason;
        s.pending_question.reset();
    }
};

} // namespace

void apply_event(SessionState& state, const SessionEvent& event) {
    if (event.sequence != static_cast<std::int64_t>(state.events.size()) + 1) {
        throw CorruptTranscriptError("expected event sequence " + std::to_string(state.events.size() + 1) +
                                     ", got " + std::to_string(event.sequence));
    }
    std::visit(Reducer{state, event}, event.payload);
    state.events.push_back(event);
}

SessionState replay(const Transcript& transcript) {
    if (transcript.format_version != kTranscriptFormatVersion) {
        throw CorruptTranscriptError("unsupported transcript format version " +
                                     std::to_string(transcript.format_version));
    }
    const auto& h = transcript.header;
    SessionState state = initial_session(h.session_id, h.problem, h.config);
    for (const auto& event : transcript.events) {
        apply_event(state, event);
    }
    return state;
}

} // namespace socratic
