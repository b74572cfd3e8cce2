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

#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "socratic/agents.hpp"
#include "socratic/datasets.hpp"
#include "socratic/gateway.hpp"
#include "socratic/orchestrator.hpp"
#include "socratic/serialize.hpp"

#ifndef SOCRATIC_SOURCE_DIR
#define SOCRATIC_SOURCE_DIR "."
#endif

namespace socratic::testing {

inline std::string source_path(const std::string& rel) { return std::string(SOCRATIC_SOURCE_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- texts quoted from the worked examples --------------------------------

// The Fibonacci plan, written the way the paper lists it ("τ1: False, task").
inline const std::string kFibStateText =
    "1. τ1: False, Understand the definition of the Fibonacci Sequence.\n"
    "2. τ2: False, Recognize that the recursive call only returns the sequence till the (n-2)th term.\n"
    "3. τ3: False, Modify the recursive call from fibonacci(n-2) to fibonacci(n-1).\n";

inline const std::vector<std::string> kFibTasks = {
    "Understand the definition of the Fibonacci Sequence.",
    "Recognize that the recursive call only returns the sequence till the (n-2)th term.",
    "Modify the recursive call from fibonacci(n-2) to fibonacci(n-1).",
};

inline const std::string kTwoSum1BugState =
    "1. Understand the problem statement and the requirement to find two numbers that add up to a specific "
    "target.\n"
    "2. Understand the logic behind calculating the difference as target - nums[i].\n"
    "3. Correctly implement the difference calculation in the code.\n";

inline const std::string kTwoSum2BugState =
    "1. Understand how to correctly calculate the difference between the target and the current number in the "
    "array.\n"
    "2. Understand the difference between lists and dictionaries in Python.\n"
    "3. Correctly initialize a dictionary in Python.\n"
    "4. Understand how to use a dictionary to store and retrieve values in Python.\n";

inline const std::string kTwoSum3BugState =
    "1. Understand how to correctly calculate the difference as `target-nums[i]`.\n"
    "2. Understand how to initialize a dictionary using `{}` instead of `[]`.\n"
    "3. Understand how to use a dictionary to store and retrieve values.\n"
    "4. Understand the correct syntax for an if-condition, including the necessary colon at the end.\n";

// ---- problems -------------------------------------------------------------

inline const ProblemSetFile& sample_set() {
    static const ProblemSetFile set = load_problem_set(source_path("data/sample_problems.json"));
    return set;
}

inline const ProblemBundle& sample(const std::string& id) {
    for (const auto& p : sample_set().problems) {
        if (p.id == id) return p;
    }
    throw std::runtime_error("no sample problem " + id);
}

inline const ProblemBundle& fib1() { return sample("fibonacci-1bug"); }

inline std::string numbered_tasks(int k) {
    std::string out;
    for (int i = 1; i <= k; ++i) out += std::to_string(i) + ". Task number " + std::to_string(i) + "\n";
    return out;
}

// ---- mock scripts ---------------------------------------------------------

inline std::string verdict_text(bool addresses, bool no_mistakes, const std::string& why) {
    auto b = [](bool v) { return v ? "True" : "False"; };
    return std::string("answer_addresses_question: ") + b(addresses) + "\nanswer_has_no_mistakes: " +
           b(no_mistakes) + "\nexplanation: " + why;
}

inline std::string understanding_text(bool yes, const std::string& why) {
    return std::string("understood: ") + (yes ? "True" : "False") + "\nexplanation: " + why;
}

// Substrings that tell the question and verification prompts apart.
inline constexpr const char* kInitialMarker = "what is one question (k=1)";
inline constexpr const char* kSiblingMarker = "same level of depth";
inline constexpr const char* kChildMarker = "increasing depth";
inline constexpr const char* kVerifyMarker = "answer_addresses_question";
inline constexpr const char* kModelAnswerMarker = "\"model_answer:\"";

// Builder for ordered mock scripts. Entries of different kinds never compete
// for the same request, so only the order within one kind matters.
struct Script {
    std::vector<MockEntry> entries;

    Script& add(std::optional<TaskKind> kind, std::string text, std::string contains = {}, int times = 1) {
        MockEntry e;
        e.task_kind = kind;
        e.text = std::move(text);
        e.contains = std::move(contains);
        e.times = times;
        entries.push_back(std::move(e));
        return *this;
    }
    Script& state(std::string text) { return add(TaskKind::state_estimation, std::move(text)); }
    Script& initial(std::string q, int times = 1) {
        return add(TaskKind::question_generation, std::move(q), kInitialMarker, times);
    }
    Script& sibling(std::string q, int times = 1) {
        return add(TaskKind::question_generation, std::move(q), kSiblingMarker, times);
    }
    Script& child(std::string q, int times = 1) {
        return add(TaskKind::question_generation, std::move(q), kChildMarker, times);
    }
    Script& verdict(bool addresses, bool no_mistakes, const std::string& why = "reason", int times = 1) {
        return add(TaskKind::verification, verdict_text(addresses, no_mistakes, why), kVerifyMarker, times);
    }
    Script& correct(int times = 1) { return verdict(true, true, "correct", times); }
    Script& wrong(const std::string& why = "misread the question", int times = 1) {
        return verdict(true, false, why, times);
    }
    Script& understood(bool yes, const std::string& why = "", int times = 1) {
        return add(TaskKind::understanding_update, understanding_text(yes, why), {}, times);
    }
    Script& model_answer(std::string answer, int times = 1) {
        return add(TaskKind::verification, "model_answer: " + std::move(answer), kModelAnswerMarker, times);
    }
    Script& resolution(std::string text, int times = 1) {
        return add(TaskKind::resolution_check, std::move(text), {}, times);
    }
    Script& student(std::string text, int times = 1) { return add(TaskKind::student_reply, std::move(text), {}, times); }
    Script& student_fixes(std::string text, int times = 1) {
        return add(TaskKind::bug_fix_collection, std::move(text), {}, times);
    }
    Script& error(TaskKind kind, GatewayErrorKind err, int times = 1) {
        MockEntry e;
        e.task_kind = kind;
        e.error = err;
        e.times = times;
        entries.push_back(std::move(e));
        return *this;
    }
    Json to_json() const {
        Json arr = Json::array();
        for (const auto& e : entries) {
            Json j{{"text", e.text}, {"times", e.times}};
            if (e.task_kind) j["task_kind"] = to_string(*e.task_kind);
            if (!e.contains.empty()) j["contains"] = e.contains;
            if (e.error) j["error"] = to_string(*e.error);
            arr.push_back(j);
        }
        return arr;
    }
};

inline GatewayConfig fast_gateway_config() {
    GatewayConfig c;
    c.backoff_base = std::chrono::milliseconds(0);
    return c;
}

// Answers each request through a callback; for property tests.
class FunctionProvider : public Provider {
public:
    using Fn = std::function<std::string(const ChatRequest&)>;
    explicit FunctionProvider(Fn fn) : fn_(std::move(fn)) {}
    ChatResponse send(const ChatRequest& request) override {
        ChatResponse r;
        r.text = fn_(request);
        r.provider_id = id();
        return r;
    }
    std::string id() const override { return "function"; }

private:
    Fn fn_;
};

// Gateway + agents + tutor over one provider, with the logical clock.
struct Harness {
    std::shared_ptr<Provider> provider;
    Gateway gateway;
    Agents agents;
    Tutor tutor;

    explicit Harness(std::shared_ptr<Provider> p, GatewayConfig config = fast_gateway_config())
        : provider(std::move(p)), gateway(provider, std::move(config)), agents(gateway), tutor(agents) {
        gateway.set_sleeper([](std::chrono::milliseconds) {});
    }
    explicit Harness(const Script& script) : Harness(script_mock(script.entries)) {}

    MockProvider& mock() { return dynamic_cast<MockProvider&>(*provider); }
};

inline std::vector<std::string> event_names(const std::vector<SessionEvent>& events) {
    std::vector<std::string> out;
    for (const auto& e : events) out.push_back(event_type_name(e.payload));
    return out;
}

template <typename T>
int count_events(const std::vector<SessionEvent>& events) {
    int n = 0;
    for (const auto& e : events) n += std::holds_alternative<T>(e.payload) ? 1 : 0;
    return n;
}

// Verifier script for the worked Fibonacci scenario: wrong, wrong,
// correct but unresolved, correct and resolved.
inline Script worked_script() {
    Script s;
    s.state(kFibStateText)
        .initial("What is the Fibonacci sequence?")
        .sibling("Can you list the first five terms of the Fibonacci sequence?")
        .sibling("Which two numbers does the Fibonacci sequence start with, and how is each next term formed?")
        .child("What does the recursive call fibonacci(n-2) return when n is 5?")
        .wrong("The student described factorials instead of the Fibonacci sequence.")
        .wrong("The student listed 1, 2, 3, 4, 5.")
        .correct()
        .understood(false, "The student has not connected the definition to the recursive call yet.")
        .correct()
        .understood(true, "The student explained each term is the sum of the two before it.")
        .understood(false, "", 2);
    return s;
}

inline const std::vector<std::string> kWorkedResponses = {
    "It is when you multiply all numbers up to n.",
    "1, 2, 3, 4, 5?",
    "It starts with 0 and 1, and every next term is the sum of the previous two.",
    "It returns [0, 1, 1], the first three terms, so each term is still the sum of the two before it.",
};

inline std::vector<std::string> worked_expected_events() {
    return {"StateEstimated",   "QuestionAsked",        "ResponseReceived", "ResponseVerified",
            "QuestionAsked",    "ResponseReceived",     "ResponseVerified", "QuestionAsked",
            "ResponseReceived", "ResponseVerified",     "UnderstandingUpdated", "QuestionAsked",
            "ResponseReceived", "ResponseVerified",     "UnderstandingUpdated", "UnderstandingUpdated",
            "TaskResolved"};
}

// Script where every correct answer resolves the target and nothing else.
// k tasks, k initial questions, k correct verdicts; the post-resolution sweep
// answers False for every remaining task.
inline Script oracle_script(int k, const std::string& final_resolution = {}) {
    Script s;
    s.state(numbered_tasks(k));
    for (int i = 1; i <= k; ++i) s.initial("Question about task " + std::to_string(i) + "?");
    s.correct(k);
    for (int i = 1; i <= k; ++i) {
        s.understood(true, "demonstrated");
        for (int j = i + 1; j <= k; ++j) s.understood(false, "not yet");
    }
    if (!final_resolution.empty()) s.resolution(final_resolution, 0);
    return s;
}

inline ScriptedStudent oracle_student(const std::vector<std::string>& fix_replies = {"None"}) {
    return ScriptedStudent::from_json(Json{{"default", "A careful, correct answer."}, {"bug_fixes", fix_replies}});
}

} // namespace socratic::testing
