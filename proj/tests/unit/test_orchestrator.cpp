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

#include <atomic>
#include <chrono>

#include "harness.hpp"
#include "socratic/orchestrator.hpp"
#include "socratic/serialize.hpp"
#include "socratic/text.hpp"

using namespace socratic;
using namespace socratic::testing;

namespace {

// A student that answers every question the same way.
ScriptedStudent constant_student(const std::string& reply, const std::vector<std::string>& fixes = {"None"}) {
    return ScriptedStudent::from_json(Json{{"default", reply}, {"bug_fixes", fixes}});
}

// Always-wrong script: unlimited siblings and wrong verdicts, two distinct
// early siblings so a verbatim re-ask is recognisable.
Script always_wrong_script(int k = 3) {
    Script s;
    s.state(numbered_tasks(k)).initial("Q0?").sibling("S1?").sibling("S2?").sibling("S-more?", 0);
    s.wrong("still confused", 0).model_answer("The sequence starts 0, 1 and adds the previous two.", 0);
    return s;
}

std::vector<ActionKind> kinds_of(const std::vector<InstructorAction>& actions) {
    std::vector<ActionKind> out;
    for (const auto& a : actions) out.push_back(a.kind);
    return out;
}

} // namespace

TEST_CASE("start_session estimates the state and asks the first question") {
    Harness h(Script{}.state(kFibStateText).initial("What is the Fibonacci sequence?"));
    auto r = h.tutor.start_session("s", fib1(), {});
    CHECK(r.state.state_space.size() == 3);
    CHECK(r.state.status == SessionStatus::awaiting_response);
    REQUIRE(r.state.pending_question.has_value());
    CHECK(r.state.pending_question->text == "What is the Fibonacci sequence?");
    CHECK(r.state.pending_question->node_id == "n1");
    CHECK(r.state.tree.target_variable_index == 1);
    CHECK(event_names(r.state.events) == std::vector<std::string>{"StateEstimated", "QuestionAsked"});
    CHECK(r.action.kind == ActionKind::question);
    CHECK(r.state.events[0].timestamp == "2026-01-01T00:00:01Z");
    CHECK(r.state.events[1].timestamp == "2026-01-01T00:00:02Z");
}

TEST_CASE("start_session under the no-state ablation uses one synthetic variable") {
    Harness h(Script{}.initial("How would you find the bug?"));
    SessionConfig cfg;
    cfg.no_state = true;
    auto r = h.tutor.start_session("s", fib1(), cfg);
    REQUIRE(r.state.state_space.size() == 1);
    CHECK(r.state.state_space.at(1).task == Agents::kNoStateTask);
    CHECK(std::get<StateEstimated>(r.state.events[0].payload).synthetic);
    for (const auto& req : h.mock().dispatched()) CHECK(req.task_kind != TaskKind::state_estimation);
}

TEST_CASE("start_session rejects bad input before calling the model") {
    Harness h(Script{}.state(kFibStateText).initial("Q"));
    auto p = fib1();
    p.bugs.clear();
    p.num_bugs = 0;
    CHECK_THROWS_AS(h.tutor.start_session("s", p, {}), InvalidProblemError);
    SessionConfig cfg;
    cfg.teach_after = 0;
    CHECK_THROWS_AS(h.tutor.start_session("s", fib1(), cfg), ConfigError);
    CHECK(h.mock().dispatched().empty());
}

TEST_CASE("worked scenario: wrong, wrong, correct-unresolved, correct-resolved") {
    auto started = std::chrono::steady_clock::now();
    Harness h(worked_script());
    auto r = h.tutor.start_session("s", fib1(), {});
    std::vector<InstructorAction> actions;
    for (const auto& reply : kWorkedResponses) {
        r = h.tutor.step(r.state, reply);
        actions.push_back(r.action);
    }
    auto elapsed = std::chrono::steady_clock::now() - started;
    CHECK(elapsed < std::chrono::seconds(1));

    CHECK(kinds_of(actions) == std::vector<ActionKind>{ActionKind::question, ActionKind::question,
                                                       ActionKind::question, ActionKind::bug_fix_request});
    CHECK(actions[0].node->kind == NodeKind::sibling);
    CHECK(actions[1].node->kind == NodeKind::sibling);
    CHECK(actions[2].node->kind == NodeKind::child);
    CHECK(actions[2].node->level == 1);
    CHECK(actions[3].text == kBugFixRequest);

    CHECK(event_names(r.state.events) == worked_expected_events());
    const auto& tree = r.state.tree;
    CHECK(tree.levels.size() == 2);
    CHECK(tree.levels.at(0).size() == 3);
    CHECK(tree.levels.at(1).size() == 1);
    CHECK(tree.current_level == 1);
    CHECK(r.state.total_turns == 4);
    CHECK(r.state.status == SessionStatus::awaiting_bug_fixes);
    CHECK(r.state.state_space.is_resolved(1));
    CHECK_FALSE(r.state.state_space.is_resolved(2));

    // The sibling prompt saw both wrong-answer explanations, latest last.
    auto sent = h.mock().dispatched();
    std::vector<std::string> sibling_prompts;
    for (const auto& req : sent) {
        if (req.flattened().find(kSiblingMarker) != std::string::npos) sibling_prompts.push_back(req.flattened());
    }
    REQUIRE(sibling_prompts.size() == 2);
    CHECK(text::icontains(sibling_prompts[1],
                          "previous_misunderstanding:\n1. The student described factorials instead of the Fibonacci "
                          "sequence.\n2. The student listed 1, 2, 3, 4, 5."));
}

TEST_CASE("teaching fires after teach_after consecutive wrong answers and re-asks the last question") {
    Harness h(always_wrong_script());
    SessionConfig cfg;  // teach_after 3
    auto r = h.tutor.start_session("s", fib1(), cfg);
    std::vector<InstructorAction> actions;
    for (int i = 0; i < 3; ++i) {
        r = h.tutor.step(r.state, "wrong");
        actions.push_back(r.action);
    }
    CHECK(kinds_of(actions) == std::vector<ActionKind>{ActionKind::question, ActionKind::question, ActionKind::teach});
    CHECK(count_events<TeachingDelivered>(r.state.events) == 1);
    const auto& teach = actions[2];
    CHECK(teach.node->kind == NodeKind::teach);
    CHECK(teach.text.rfind("The sequence starts 0, 1 and adds the previous two.", 0) == 0);
    CHECK(teach.text.substr(teach.text.size() - std::string("S2?").size()) == "S2?");
    CHECK(r.state.consecutive_incorrect == 0);

    // The model answer was asked for the level's first question.
    bool asked_first = false;
    for (const auto& req : h.mock().dispatched()) {
        if (req.flattened().find("instructor_question: Q0?") != std::string::npos &&
            req.flattened().find(kModelAnswerMarker) != std::string::npos) {
            asked_first = true;
        }
    }
    CHECK(asked_first);

    // Teaching does not use up width: the next wrong answer gets a sibling.
    r = h.tutor.step(r.state, "still wrong");
    CHECK(r.action.kind == ActionKind::question);
    CHECK(r.action.node->kind == NodeKind::sibling);
    CHECK(r.state.tree.width(0) == 4);
    CHECK(r.state.tree.level_nodes(0).size() == 5);
}

TEST_CASE("no-teaching ablation never teaches") {
    Harness h(always_wrong_script());
    SessionConfig cfg;
    cfg.no_teaching = true;
    auto student = constant_student("wrong");
    auto t = run_to_completion(h.tutor, fib1(), student, cfg, "s");
    CHECK(count_events<TeachingDelivered>(t.events) == 0);
    CHECK(t.final_state->termination_reason == TerminationReason::turn_cap_reached);
    CHECK(t.final_state->total_turns == 20);
    // Width is unbounded without teaching.
    CHECK(t.final_state->tree.width(0) == 20);
}

TEST_CASE("a full level triggers teaching before teach_after is reached") {
    Harness h(always_wrong_script());
    SessionConfig cfg;
    cfg.teach_after = 10;
    cfg.max_width = 2;
    auto r = h.tutor.start_session("s", fib1(), cfg);
    r = h.tutor.step(r.state, "wrong");
    CHECK(r.action.node->kind == NodeKind::sibling);
    r = h.tutor.step(r.state, "wrong");
    CHECK(r.action.kind == ActionKind::teach);
    CHECK(r.action.text.substr(r.action.text.size() - 3) == "S1?");
}

TEST_CASE("at the depth bound a correct but incomplete answer is taught") {
    Script s;
    s.state(numbered_tasks(2)).initial("Q0?").child("C1?").child("C2?").correct(0);
    s.understood(false, "gap remains", 0).model_answer("Here is the answer.", 0).sibling("S?", 0);
    SessionConfig cfg;
    cfg.max_depth = 3;

    SUBCASE("teaching") {
        Harness h(s);
        auto r = h.tutor.start_session("s", fib1(), cfg);
        r = h.tutor.step(r.state, "right");
        CHECK(r.action.node->kind == NodeKind::child);
        r = h.tutor.step(r.state, "right");
        CHECK(r.action.node->kind == NodeKind::child);
        CHECK(r.state.tree.current_level == 2);
        r = h.tutor.step(r.state, "right");
        CHECK(r.action.kind == ActionKind::teach);
        CHECK(r.state.tree.depth() == 3);
        CHECK(r.action.text.substr(r.action.text.size() - 3) == "C2?");
        bool gap_used = false;
        for (const auto& req : h.mock().dispatched()) {
            if (req.flattened().find(kModelAnswerMarker) != std::string::npos &&
                req.flattened().find("misunderstanding:\ngap remains") != std::string::npos) {
                gap_used = true;
            }
        }
        CHECK(gap_used);
    }
    SUBCASE("without teaching the level gets a sibling instead") {
        cfg.no_teaching = true;
        Harness h(s);
        auto r = h.tutor.start_session("s", fib1(), cfg);
        for (int i = 0; i < 3; ++i) r = h.tutor.step(r.state, "right");
        CHECK(r.action.node->kind == NodeKind::sibling);
        CHECK(r.state.tree.depth() == 3);
    }
}

TEST_CASE("resolved target with isomorphic fixes ends the session") {
    Script s;
    s.state(numbered_tasks(1)).initial("Q?").correct().understood(true, "yes");
    s.resolution("correct_bug_fix_1: True - same change");
    Harness h(s);
    auto r = h.tutor.start_session("s", fib1(), {});
    r = h.tutor.step(r.state, "The call should use n-1.");
    CHECK(r.action.kind == ActionKind::bug_fix_request);
    r = h.tutor.submit_bug_fix_reply(r.state, "bug_fix_1: call fibonacci on n minus one");
    CHECK(r.action.kind == ActionKind::terminated);
    CHECK(r.state.termination_reason == TerminationReason::all_fixes_isomorphic);
    CHECK(event_names(r.state.events) ==
          std::vector<std::string>{"StateEstimated", "QuestionAsked", "ResponseReceived", "ResponseVerified",
                                   "UnderstandingUpdated", "TaskResolved", "BugFixesCollected", "ResolutionChecked",
                                   "Terminated"});
    CHECK(r.state.collected_fixes.fixes == std::vector<std::string>{"call fibonacci on n minus one"});
}

TEST_CASE("early stop with variables still unresolved") {
    Script s;
    s.state(numbered_tasks(3)).initial("Q1?").correct().understood(true, "yes").understood(false, "", 2);
    s.resolution("correct_bug_fix_1: True - equivalent");
    Harness h(s);
    auto r = h.tutor.start_session("s", fib1(), {});
    r = h.tutor.step(r.state, "answer");
    r = h.tutor.submit_bug_fixes(r.state, BugFixList{{"use n-1 in the recursive call"}});
    CHECK(r.state.termination_reason == TerminationReason::all_fixes_isomorphic);
    CHECK(r.state.state_space.unresolved_indices() == std::vector<int>{2, 3});
    CHECK(r.state.last_resolution->all_covered);
}

TEST_CASE("no fixes yet: a new tree for the next unresolved variable") {
    Script s;
    s.state(numbered_tasks(3)).initial("Q1?").initial("Q3?").correct();
    // Target resolves, and the sweep finds task 2 resolved as well.
    s.understood(true, "t1").understood(true, "t2").understood(false, "t3");
    Harness h(s);
    auto r = h.tutor.start_session("s", fib1(), {});
    r = h.tutor.step(r.state, "answer");
    CHECK(count_events<TaskResolved>(r.state.events) == 2);
    r = h.tutor.submit_bug_fix_reply(r.state, "None");
    CHECK(r.action.kind == ActionKind::question);
    CHECK(r.action.node->kind == NodeKind::initial);
    CHECK(r.state.tree.target_variable_index == 3);
    CHECK(r.state.tree.levels.at(0).size() == 1);
    CHECK(r.state.history.size() == 1);
    auto names = event_names(r.state.events);
    auto nt = std::find(names.begin(), names.end(), "NewTreeStarted");
    REQUIRE(nt != names.end());
    CHECK(std::find(names.begin(), nt, "TaskResolved") != nt);
    // No suggestions means no resolution call.
    for (const auto& req : h.mock().dispatched()) CHECK(req.task_kind != TaskKind::resolution_check);
}

TEST_CASE("all variables resolved without covering fixes ends with all_tasks_resolved") {
    Script s;
    s.state(numbered_tasks(1)).initial("Q?").correct().understood(true, "yes");
    s.resolution("correct_bug_fix_1: False - unrelated");
    Harness h(s);
    auto r = h.tutor.start_session("s", fib1(), {});
    r = h.tutor.step(r.state, "answer");
    r = h.tutor.submit_bug_fixes(r.state, BugFixList{{"rename the function"}});
    CHECK(r.state.termination_reason == TerminationReason::all_tasks_resolved);
}

TEST_CASE("an unchanged fix list reuses the previous verdict") {
    Script s;
    s.state(numbered_tasks(2)).initial("Q1?").initial("Q2?").correct(2);
    s.understood(true, "").understood(false, "").understood(true, "");
    s.resolution("correct_bug_fix_1: False - not yet");
    Harness h(s);
    auto r = h.tutor.start_session("s", fib1(), {});
    r = h.tutor.step(r.state, "a1");
    r = h.tutor.submit_bug_fixes(r.state, BugFixList{{"something vague"}});
    r = h.tutor.step(r.state, "a2");
    r = h.tutor.submit_bug_fixes(r.state, BugFixList{{"something vague"}});
    CHECK(r.state.termination_reason == TerminationReason::all_tasks_resolved);
    int checks = 0;
    int reused = 0;
    for (const auto& e : r.state.events) {
        if (auto* rc = std::get_if<ResolutionChecked>(&e.payload)) {
            ++checks;
            reused += rc->reused ? 1 : 0;
        }
    }
    CHECK(checks == 2);
    CHECK(reused == 1);
    int calls = 0;
    for (const auto& req : h.mock().dispatched()) calls += req.task_kind == TaskKind::resolution_check ? 1 : 0;
    CHECK(calls == 1);
}

TEST_CASE("sweep_mode=always checks every remaining variable on each correct answer") {
    Script s;
    s.state(numbered_tasks(3)).initial("Q?").child("C?").correct();
    s.understood(false, "target gap").understood(true, "t2").understood(false, "t3");
    SessionConfig cfg;
    cfg.sweep_mode = SweepMode::always;
    Harness h(s);
    auto r = h.tutor.start_session("s", fib1(), cfg);
    r = h.tutor.step(r.state, "answer");
    CHECK(r.action.node->kind == NodeKind::child);
    CHECK(r.state.state_space.is_resolved(2));
    CHECK_FALSE(r.state.state_space.is_resolved(1));
    CHECK(r.state.gap_explanation == "target gap");
    auto& upd = std::get<UnderstandingUpdated>(r.state.events[4].payload);
    CHECK(upd.checked == std::vector<int>{1, 2, 3});
}

TEST_CASE("the turn cap ends the session at exactly 20 x num_bugs") {
    for (const char* id : {"fibonacci-1bug", "two-sum-2bug"}) {
        Harness h(always_wrong_script());
        auto student = constant_student("no idea");
        auto t = run_to_completion(h.tutor, sample(id), student, {}, "s");
        const auto& fin = *t.final_state;
        CHECK(fin.termination_reason == TerminationReason::turn_cap_reached);
        CHECK(fin.total_turns == 20 * sample(id).num_bugs);
        auto& term = std::get<Terminated>(t.events.back().payload);
        CHECK(text::icontains(term.summary, "Still unresolved:"));
        CHECK(text::icontains(term.summary, "1. Task number 1"));
    }
}

TEST_CASE("the cap applies even when the last answer resolves the target") {
    Script s;
    s.state(numbered_tasks(1)).initial("Q?").correct().understood(true, "");
    SessionConfig cfg;
    cfg.max_turns_per_bug = 1;
    Harness h(s);
    auto r = h.tutor.start_session("s", fib1(), cfg);
    r = h.tutor.step(r.state, "answer");
    CHECK(r.state.termination_reason == TerminationReason::turn_cap_reached);
    CHECK(count_events<BugFixesCollected>(r.state.events) == 0);
}

TEST_CASE("operations refuse the wrong session status") {
    Harness h(worked_script());
    auto r = h.tutor.start_session("s", fib1(), {});
    CHECK_THROWS_AS(h.tutor.submit_bug_fixes(r.state, {}), InvalidStateError);
    CHECK_THROWS_AS(h.tutor.step(r.state, "   "), InvalidStateError);
    for (const auto& reply : kWorkedResponses) r = h.tutor.step(r.state, reply);
    CHECK_THROWS_AS(h.tutor.step(r.state, "more"), InvalidStateError);

    auto done = r.state;
    done.status = SessionStatus::terminated;
    done.termination_reason = TerminationReason::all_tasks_resolved;
    CHECK_THROWS_AS(h.tutor.step(done, "x"), InvalidStateError);
    CHECK_THROWS_AS(h.tutor.submit_bug_fixes(done, {}), InvalidStateError);
    CHECK(Tutor::current_action(done).kind == ActionKind::terminated);
}

TEST_CASE("a gateway failure leaves the session untouched and retryable") {
    std::atomic<bool> fail{false};
    auto inner = script_mock(worked_script().entries);
    auto provider = std::make_shared<FunctionProvider>([&](const ChatRequest& req) {
        if (fail) throw GatewayError(GatewayErrorKind::auth_failure, "down");
        return inner->send(req).text;
    });
    Harness h(provider);
    auto r = h.tutor.start_session("s", fib1(), {});
    auto before = r.state;
    fail = true;
    CHECK_THROWS_AS(h.tutor.step(before, kWorkedResponses[0]), GatewayError);
    fail = false;
    CHECK(before == r.state);
    r = h.tutor.step(before, kWorkedResponses[0]);
    CHECK(r.action.node->kind == NodeKind::sibling);
}

TEST_CASE("oracle student: one question per state variable") {
    for (int k = 1; k <= 4; ++k) {
        CAPTURE(k);
        Harness h(oracle_script(k));
        auto student = oracle_student();
        auto t = run_to_completion(h.tutor, fib1(), student, {}, "s");
        CHECK(t.final_state->total_turns == k);
        CHECK(t.final_state->termination_reason == TerminationReason::all_tasks_resolved);
        CHECK(count_events<NewTreeStarted>(t.events) == k - 1);
    }
}

TEST_CASE("identical scripts give byte-identical transcripts") {
    auto run = [] {
        Harness h(worked_script().resolution("correct_bug_fix_1: True - same"));
        auto student = ScriptedStudent::from_json(
            Json{{"responses", kWorkedResponses}, {"bug_fixes", {"bug_fix_1: use n-1 in the recursive call"}}});
        return transcript_to_string(run_to_completion(h.tutor, fib1(), student, {}, "s-fixed"));
    };
    auto a = run();
    auto b = run();
    CHECK(a == b);
    CHECK(text::icontains(a, "all_fixes_isomorphic"));
}

TEST_CASE("resume plus continuation equals the uninterrupted run") {
    auto script = [] {
        Script s = always_wrong_script(2);
        return s;
    };
    auto student = constant_student("hmm");

    Harness full(script());
    auto uninterrupted = run_to_completion(full.tutor, fib1(), student, {}, "s");

    // Same script consumed in two processes' worth of steps.
    Harness part(script());
    auto r = part.tutor.start_session("s", fib1(), {});
    for (int i = 0; i < 7; ++i) r = part.tutor.step(r.state, student.respond(r.state, r.action));
    auto saved = transcript_from_string(
        transcript_to_string(make_transcript(r.state, part.agents.catalog().hash(), part.gateway.provider_id())));
    auto resumed = resume(saved);
    CHECK(resumed == r.state);
    auto continued = continue_session(part.tutor, resumed, student);
    CHECK(transcript_to_string(continued) == transcript_to_string(uninterrupted));
}

TEST_CASE("run_to_completion reports failures with the partial transcript") {
    Script s;
    s.state(numbered_tasks(2)).initial("Q?").wrong("no");  // nothing for the sibling
    Harness h(s);
    auto student = constant_student("x");
    try {
        run_to_completion(h.tutor, fib1(), student, {}, "s");
        FAIL("expected SessionAborted");
    } catch (const SessionAborted& e) {
        // Only the first question survives: the failed step was not committed.
        CHECK(e.partial().events.size() == 2);
        CHECK(replay(e.partial()) == *e.partial().final_state);
        CHECK_FALSE(e.partial().final_state->termination_reason.has_value());
    }

    Harness broken(Script{}.add(TaskKind::state_estimation, "no list at all", {}, 0));
    try {
        run_to_completion(broken.tutor, fib1(), student, {}, "s");
        FAIL("expected a setup failure");
    } catch (const SessionSetupError&) {
    }
}

TEST_CASE("scripted students answer by ordinal, pattern, then default") {
    auto s = ScriptedStudent::from_json(Json{{"responses", {{"2", "second"}}},
                                             {"patterns", {{{"match", "fibonacci\\s+sequence"}, {"response", "pat"}}}},
                                             {"bug_fixes", {"None", "bug_fix_1: x"}},
                                             {"default", "dflt"}});
    SessionState st;
    InstructorAction a{ActionKind::question, "What is the Fibonacci  Sequence?", std::nullopt, std::nullopt};
    CHECK(s.respond(st, a) == "pat");
    st.history.resize(1);
    CHECK(s.respond(st, a) == "second");
    st.history.resize(2);
    a.text = "other";
    CHECK(s.respond(st, a) == "dflt");
    CHECK(s.bug_fix_reply(st) == "None");
    st.events.push_back(SessionEvent{1, "", BugFixesCollected{}});
    CHECK(s.bug_fix_reply(st) == "bug_fix_1: x");
    st.events.push_back(SessionEvent{2, "", BugFixesCollected{}});
    CHECK(s.bug_fix_reply(st) == "bug_fix_1: x");

    auto arr = ScriptedStudent::from_json(Json{{"responses", {"one", "two"}}});
    CHECK(arr.respond(SessionState{}, a) == "one");
    CHECK(arr.bug_fix_reply(SessionState{}) == "None");
    CHECK_THROWS_AS(ScriptedStudent::from_json(Json::array()), ConfigError);
    CHECK_THROWS_AS(ScriptedStudent::from_json(Json{{"patterns", {{{"match", "("}, {"response", "x"}}}}}),
                    ConfigError);
    CHECK_THROWS_AS(ScriptedStudent::load("/nonexistent.json"), ConfigError);
}

TEST_CASE("simulated student drives a full session through the gateway") {
    Script s;
    s.state(numbered_tasks(1)).initial("What does fibonacci(3) return?").correct().understood(true, "");
    s.student("It returns [0, 1] because the call stops early.");
    s.student_fixes("bug_summarization: the call skips a term\nbug_fix_1: recurse on n-1 instead of n-2");
    s.resolution("correct_bug_fix_1: True - same");
    Harness h(s);
    SimulatedStudent student(h.agents);
    auto t = run_to_completion(h.tutor, fib1(), student, {}, "s");
    CHECK(t.final_state->termination_reason == TerminationReason::all_fixes_isomorphic);
    CHECK(t.final_state->history[0].student_response == "It returns [0, 1] because the call stops early.");
    CHECK(t.header.provider_id == "mock");
    CHECK(t.header.template_catalog_hash == h.agents.catalog().hash());
}

TEST_CASE("no-state ablation never checks an ordinal beyond 1") {
    Script s;
    s.initial("How would you start?").sibling("And then?", 0).child("Deeper?", 0).wrong("no", 2).correct(0);
    s.understood(false, "", 2).understood(true, "").model_answer("answer", 0);
    s.resolution("correct_bug_fix_1: True - ok");
    SessionConfig cfg;
    cfg.no_state = true;
    Harness h(s);
    auto student = constant_student("answer", {"bug_fix_1: something"});
    auto t = run_to_completion(h.tutor, fib1(), student, cfg, "s");
    CHECK(t.final_state->state_space.size() == 1);
    for (const auto& e : t.events) {
        if (auto* u = std::get_if<UnderstandingUpdated>(&e.payload)) {
            for (int idx : u->checked) CHECK(idx == 1);
        }
    }
    CHECK(t.final_state->status == SessionStatus::terminated);
}
