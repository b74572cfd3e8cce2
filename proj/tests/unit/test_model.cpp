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

#include <doctest.h>

#include "harness.hpp"
#include "socratic/errors.hpp"
#include "socratic/model.hpp"
#include "socratic/serialize.hpp"

using namespace socratic;
using namespace socratic::testing;

namespace {

StateSpace space_with(const std::vector<bool>& resolved) {
    StateSpace s;
    for (std::size_t i = 0; i < resolved.size(); ++i) {
        s.variables.push_back({static_cast<int>(i) + 1, "task " + std::to_string(i + 1), resolved[i]});
    }
    return s;
}

QuestionNode node(NodeKind kind, int level, std::string text, int target = 1) {
    QuestionNode n;
    n.kind = kind;
    n.level = level;
    n.text = std::move(text);
    n.target_variable_index = target;
    return n;
}

} // namespace

TEST_CASE("target_variable picks the lowest unresolved ordinal") {
    CHECK(target_variable(space_with({false, false, false}))->index == 1);
    CHECK(target_variable(space_with({true, false, true}))->index == 2);
    CHECK_FALSE(target_variable(space_with({true, true})).has_value());
}

TEST_CASE("target_variable over every resolution pattern up to k = 10") {
    for (int k = 1; k <= 10; ++k) {
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            std::vector<bool> resolved;
            for (int i = 0; i < k; ++i) resolved.push_back(((mask >> i) & 1u) != 0);
            auto got = target_variable(space_with(resolved));
            // Independent oracle: the lowest clear bit.
            int expected = 0;
            for (int i = 0; i < k; ++i) {
                if (((mask >> i) & 1u) == 0) {
                    expected = i + 1;
                    break;
                }
            }
            if (expected == 0) {
                REQUIRE_FALSE(got.has_value());
            } else {
                REQUIRE(got.has_value());
                REQUIRE(got->index == expected);
            }
        }
    }
}

TEST_CASE("add_question places roots, siblings and children") {
    QuestionTree t;
    t = add_question(t, node(NodeKind::initial, 0, "q0"));
    CHECK(t.levels.size() == 1);
    CHECK(t.current_level == 0);

    t = add_question(t, node(NodeKind::sibling, 0, "q1"));
    CHECK(t.levels.at(0).size() == 2);
    CHECK(t.current_level == 0);

    t = add_question(t, node(NodeKind::child, 1, "q2"));
    CHECK(t.levels.at(0).size() == 2);
    CHECK(t.levels.at(1).size() == 1);
    CHECK(t.current_level == 1);
    CHECK(t.depth() == 2);
}

TEST_CASE("add_question rejects inconsistent placements") {
    QuestionTree empty;
    CHECK_THROWS_AS(add_question(empty, node(NodeKind::sibling, 0, "s")), PlacementError);
    CHECK_THROWS_AS(add_question(empty, node(NodeKind::child, 1, "c")), PlacementError);
    CHECK_THROWS_AS(add_question(empty, node(NodeKind::initial, 1, "i")), PlacementError);

    auto t = add_question(empty, node(NodeKind::initial, 0, "q0"));
    CHECK_THROWS_AS(add_question(t, node(NodeKind::initial, 0, "again")), PlacementError);
    CHECK_THROWS_AS(add_question(t, node(NodeKind::sibling, 1, "wrong level")), PlacementError);
    CHECK_THROWS_AS(add_question(t, node(NodeKind::child, 2, "skips a level")), PlacementError);
    CHECK_THROWS_AS(add_question(t, node(NodeKind::sibling, 0, "other target", 2)), PlacementError);
}

TEST_CASE("teach nodes sit on the current level without counting toward width") {
    QuestionTree t;
    t = add_question(t, node(NodeKind::initial, 0, "q0"));
    t = add_question(t, node(NodeKind::teach, 0, "answer + q0"));
    t = add_question(t, node(NodeKind::sibling, 0, "q1"));
    CHECK(t.levels.at(0).size() == 3);
    CHECK(t.width(0) == 2);
    CHECK(t.current_questions().size() == 2);
    CHECK(t.current_questions().back().text == "q1");
}

TEST_CASE("current_level never decreases while questions are added") {
    QuestionTree t;
    t = add_question(t, node(NodeKind::initial, 0, "q"));
    int last = t.current_level;
    const NodeKind pattern[] = {NodeKind::sibling, NodeKind::child, NodeKind::teach, NodeKind::sibling,
                                NodeKind::child,   NodeKind::child, NodeKind::sibling};
    for (auto kind : pattern) {
        int level = kind == NodeKind::child ? t.current_level + 1 : t.current_level;
        t = add_question(t, node(kind, level, "x"));
        CHECK(t.current_level >= last);
        last = t.current_level;
    }
    CHECK(last == 3);
}

TEST_CASE("reset_tree starts an empty tree for the next target and keeps history") {
    SessionState s = initial_session("s", fib1(), {});
    s.state_space = StateSpace::from_tasks({"a", "b", "c"});
    s.state_space.at(1).resolved = true;
    s.tree = add_question(s.tree, node(NodeKind::initial, 0, "q0"));
    s.tree = add_question(s.tree, node(NodeKind::child, 1, "q1"));
    s.consecutive_incorrect = 2;
    s.history.push_back({node(NodeKind::initial, 0, "q0"), "answer", Verdict{true, true, ""}});

    auto out = reset_tree(s, 2);
    CHECK(out.tree.empty());
    CHECK(out.tree.target_variable_index == 2);
    CHECK(out.tree.current_level == 0);
    CHECK(out.consecutive_incorrect == 0);
    CHECK(out.history == s.history);
}

TEST_CASE("validate_problem enforces bundle invariants") {
    auto p = fib1();
    CHECK_NOTHROW(validate_problem(p));

    auto no_bugs = p;
    no_bugs.bugs.clear();
    no_bugs.num_bugs = 0;
    CHECK_THROWS_AS(validate_problem(no_bugs), InvalidProblemError);

    auto mismatch = p;
    mismatch.num_bugs = 2;
    CHECK_THROWS_AS(validate_problem(mismatch), InvalidProblemError);

    auto empty_fix = p;
    empty_fix.bugs[0].fix = "  ";
    CHECK_THROWS_AS(validate_problem(empty_fix), InvalidProblemError);
}

TEST_CASE("Verdict v is the conjunction of both flags") {
    CHECK(Verdict{true, true, ""}.correct());
    CHECK_FALSE(Verdict{true, false, ""}.correct());
    CHECK_FALSE(Verdict{false, true, ""}.correct());
    CHECK_FALSE(Verdict{false, false, ""}.correct());
}

TEST_CASE("BugFixList::from trims and drops blanks") {
    auto l = BugFixList::from({"  fix a ", "", "   ", "fix b"});
    CHECK(l.fixes == std::vector<std::string>{"fix a", "fix b"});
}

TEST_CASE("turn cap scales with the bug count") {
    SessionConfig c;
    CHECK(c.turn_cap(1) == 20);
    CHECK(c.turn_cap(3) == 60);
}

TEST_CASE("apply_event rejects out-of-order and misplaced events") {
    SessionState s = initial_session("s", fib1(), {});
    CHECK_THROWS_AS(apply_event(s, SessionEvent{2, "t", StateEstimated{{"a"}, false}}), CorruptTranscriptError);
    CHECK_THROWS_AS(apply_event(s, SessionEvent{1, "t", ResponseReceived{"hi"}}), CorruptTranscriptError);
    CHECK_THROWS_AS(apply_event(s, SessionEvent{1, "t", StateEstimated{{}, false}}), CorruptTranscriptError);

    apply_event(s, SessionEvent{1, "t", StateEstimated{{"a", "b"}, false}});
    CHECK(s.state_space.size() == 2);
    // A new tree is only legal once the current target is resolved.
    CHECK_THROWS_AS(apply_event(s, SessionEvent{2, "t", NewTreeStarted{2}}), CorruptTranscriptError);
    // Bug fixes are only accepted when requested.
    CHECK_THROWS_AS(apply_event(s, SessionEvent{2, "t", BugFixesCollected{}}), CorruptTranscriptError);
    CHECK(s.events.size() == 1);
}

TEST_CASE("replay of a live session reproduces it field by field") {
    Harness h(worked_script());
    auto r = h.tutor.start_session("s-1", fib1(), {});
    for (const auto& reply : kWorkedResponses) r = h.tutor.step(r.state, reply);

    auto t = make_transcript(r.state, h.agents.catalog().hash(), h.gateway.provider_id());
    CHECK(replay(t) == r.state);

    // Through the canonical text form as well.
    auto back = transcript_from_string(transcript_to_string(t));
    CHECK(back == t);
    CHECK(replay(back) == r.state);
}

TEST_CASE("replay rejects a non-contiguous event stream") {
    Harness h(worked_script());
    auto r = h.tutor.start_session("s-1", fib1(), {});
    r = h.tutor.step(r.state, kWorkedResponses[0]);
    auto t = make_transcript(r.state, "hash", "mock");
    t.events.erase(t.events.begin() + 2);
    CHECK_THROWS_AS(replay(t), CorruptTranscriptError);
}

TEST_CASE("history is append-only across steps") {
    Harness h(worked_script());
    auto r = h.tutor.start_session("s-1", fib1(), {});
    std::vector<Turn> before;
    for (const auto& reply : kWorkedResponses) {
        r = h.tutor.step(r.state, reply);
        REQUIRE(r.state.history.size() == before.size() + 1);
        for (std::size_t i = 0; i < before.size(); ++i) CHECK(r.state.history[i] == before[i]);
        before = r.state.history;
    }
}

TEST_CASE("transcript serialization is canonical and uses the documented field names") {
    Harness h(worked_script());
    auto r = h.tutor.start_session("s-1", fib1(), {});
    auto t = make_transcript(r.state, "hash", "mock");
    auto text = transcript_to_string(t);
    CHECK(text == transcript_to_string(transcript_from_string(text)));

    auto j = Json::parse(text);
    CHECK(j.contains("header"));
    CHECK(j.contains("events"));
    CHECK(j["header"]["problem_id"] == "fibonacci-1bug");
    CHECK(j["header"]["template_catalog_hash"] == "hash");
    CHECK(j["events"][0]["sequence"] == 1);
    CHECK(j["events"][1]["payload"]["node"]["kind"] == "initial");
    CHECK_THROWS_AS(transcript_from_string("{not json"), CorruptTranscriptError);
}
