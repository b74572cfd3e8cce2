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

#include "socratic/agents.hpp"

#include <algorithm>

#include "socratic/text.hpp"

namespace socratic {

namespace {

constexpr std::string_view kReformatList =
    "\n\nYour previous reply could not be read. Format your answer exactly as a numbered list, "
    "one task per line: \"1. <task>\".";
constexpr std::string_view kReformatLabels =
    "\n\nYour previous reply could not be read. Reply with exactly the labeled lines requested, "
    "using True or False.";
constexpr std::string_view kMoreIndirect =
    "\n\nYour previous question revealed part of the solution. Ask again, more indirectly: do not "
    "mention any code change, replacement or fix, so the Student can find it themselves.";

std::vector<std::string> fixes_of(const ProblemBundle& p) {
    std::vector<std::string> out;
    for (const auto& b : p.bugs) out.push_back(b.fix);
    return out;
}

std::vector<std::string> descriptions_of(const ProblemBundle& p) {
    std::vector<std::string> out;
    for (const auto& b : p.bugs) out.push_back(b.description);
    return out;
}

std::vector<std::string> texts_of(const std::vector<QuestionNode>& nodes) {
    std::vector<std::string> out;
    for (const auto& n : nodes) out.push_back(n.text);
    return out;
}

SlotValues instructor_slots(const ProblemBundle& p) {
    return {{"problem", p.problem_statement},
            {"buggy_code", p.buggy_code},
            {"bug_fixes", numbered(fixes_of(p))},
            {"bug_descriptions", numbered(descriptions_of(p))}};
}

SlotValues verifier_slots(const ProblemBundle& p) {
    auto slots = instructor_slots(p);
    slots["correct_code"] = p.correct_code;
    return slots;
}

SlotValues student_slots(const StudentView& v) {
    return {{"problem", v.problem_statement}, {"buggy_code", v.buggy_code}};
}

} // namespace

StudentView student_view(const ProblemBundle& problem) {
    return {problem.problem_statement, problem.buggy_code};
}

std::vector<std::string> fix_fragments(const ProblemBundle& problem) {
    std::vector<std::string> out;
    auto add = [&](std::string_view s) {
        s = text::trim(s);
        if (s.size() < 8 || text::icontains(problem.buggy_code, s)) return;
        if (std::find(out.begin(), out.end(), s) == out.end()) out.emplace_back(s);
    };
    for (const auto& bug : problem.bugs) {
        add(bug.fix);
        // `code spans` inside the fix are the part most likely to be quoted.
        std::string_view fix = bug.fix;
        for (auto open = fix.find('`'); open != std::string_view::npos; open = fix.find('`', open)) {
            auto close = fix.find('`', open + 1);
            if (close == std::string_view::npos) break;
            add(fix.substr(open + 1, close - open - 1));
            open = close + 1;
        }
    }
    return out;
}

bool leaks_fix(std::string_view text, const ProblemBundle& problem) {
    for (const auto& fragment : fix_fragments(problem)) {
        if (text::icontains(text, fragment)) return true;
    }
    return false;
}

std::string render_history(const std::vector<Turn>& history) {
    if (history.empty()) return "(no conversation yet)";
    std::string out;
    for (const auto& turn : history) {
        if (!out.empty()) out += "\n";
        out += "Instructor: " + turn.question.text + "\nStudent: " + turn.student_response;
    }
    return out;
}

std::string numbered(const std::vector<std::string>& items) {
    if (items.empty()) return "(none)";
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += "\n";
        out += std::to_string(i + 1) + ". " + items[i];
    }
    return out;
}

Agents::Agents(Gateway& gateway, const TemplateCatalog& catalog) : gateway_(gateway), catalog_(catalog) {}

std::string Agents::ask(const RenderedPrompt& prompt, std::string_view suffix) {
    auto messages = prompt.messages();
    messages.back().text += suffix;
    return gateway_.complete(prompt.task_kind, std::move(messages)).text;
}

StateSpace Agents::generate_state(const ProblemBundle& problem) {
    validate_problem(problem);
    auto prompt = catalog_.get("state_estimation").render(verifier_slots(problem));
    auto parsed = parse_state_representation(ask(prompt));
    if (!ok(parsed)) parsed = parse_state_representation(ask(prompt, kReformatList));
    if (!ok(parsed)) {
        throw SessionSetupError("state estimation failed for '" + problem.id +
                                "': " + std::get<ParseError>(parsed).message);
    }
    return StateSpace::from_tasks(std::get<ParsedStateRepresentation>(parsed).tasks);
}

QuestionNode Agents::question_from(const ProblemBundle& problem, const RenderedPrompt& prompt, NodeKind kind,
                                   int level, int target) {
    auto generate = [&](std::string_view suffix) -> std::string {
        auto parsed = parse_question(ask(prompt, suffix));
        if (!ok(parsed)) parsed = parse_question(ask(prompt, suffix));
        if (!ok(parsed)) {
            throw GatewayError(GatewayErrorKind::bad_response, "question generation returned empty text twice");
        }
        return std::get<std::string>(parsed);
    };

    QuestionNode node;
    node.level = level;
    node.kind = kind;
    node.target_variable_index = target;
    node.text = generate({});
    if (leaks_fix(node.text, problem)) {
        node.text = generate(kMoreIndirect);
        node.leak_flagged = leaks_fix(node.text, problem);
    }
    return node;
}

QuestionNode Agents::generate_initial_question(const ProblemBundle& problem, const StateVariable& target) {
    if (target.resolved) throw InvalidStateError("initial question for an already resolved task");
    auto slots = instructor_slots(problem);
    slots["target"] = target.task;
    auto prompt = catalog_.get("initial_question").render(slots);
    return question_from(problem, prompt, NodeKind::initial, 0, target.index);
}

QuestionNode Agents::generate_sibling_question(const ProblemBundle& problem, const StateVariable& target,
                                               const std::vector<QuestionNode>& level_questions,
                                               const std::vector<Turn>& history,
                                               const std::vector<std::string>& misunderstandings) {
    if (level_questions.empty()) throw InvalidStateError("sibling question needs an existing level");
    auto slots = instructor_slots(problem);
    slots["target"] = target.task;
    slots["conversation_history"] = render_history(history);
    slots["previous_questions"] = numbered(texts_of(level_questions));
    slots["previous_misunderstanding"] = numbered(misunderstandings);
    auto prompt = catalog_.get("sibling_question").render(slots);
    return question_from(problem, prompt, NodeKind::sibling, level_questions.back().level, target.index);
}

QuestionNode Agents::generate_child_question(const ProblemBundle& problem, const StateVariable& target,
                                             const std::vector<QuestionNode>& level_questions,
                                             const std::vector<Turn>& history, const std::string& gap) {
    if (level_questions.empty()) throw InvalidStateError("child question needs a parent level");
    auto slots = instructor_slots(problem);
    slots["target"] = target.task;
    slots["conversation_history"] = render_history(history);
    slots["previous_questions"] = numbered(texts_of(level_questions));
    slots["previous_misunderstanding"] = gap.empty() ? "(none)" : gap;
    auto prompt = catalog_.get("child_question").render(slots);
    return question_from(problem, prompt, NodeKind::child, level_questions.back().level + 1, target.index);
}

Verdict Agents::verify_response(const ProblemBundle& problem, const QuestionNode& question,
                                const std::string& response) {
    auto slots = verifier_slots(problem);
    slots["instructor_question"] = question.text;
    slots["student_response"] = response;
    auto prompt = catalog_.get("verify_response").render(slots);
    auto raw = ask(prompt);
    auto parsed = parse_verdict(raw);
    if (!ok(parsed)) {
        raw = ask(prompt, kReformatLabels);
        parsed = parse_verdict(raw);
    }
    if (!ok(parsed)) {
        auto why = std::string(text::trim(raw));
        return Verdict{false, false, why.empty() ? "(unreadable verifier reply)" : why};
    }
    return std::get<Verdict>(parsed);
}

UnderstandingResult Agents::update_understanding(const ProblemBundle& problem, const StateSpace& state_space,
                                                 const std::vector<int>& to_check, const QuestionNode& question,
                                                 const std::string& response, const std::vector<Turn>& history) {
    UnderstandingResult result{state_space, {}, {}, {}};
    for (int index : to_check) {
        const auto& variable = state_space.at(index);
        if (variable.resolved) continue;
        auto slots = verifier_slots(problem);
        slots["conversation_history"] = render_history(history);
        slots["instructor_question"] = question.text;
        slots["student_response"] = response;
        slots["target"] = variable.task;
        auto raw = ask(catalog_.get("update_understanding").render(slots));
        auto parsed = parse_understanding(raw);
        bool understood = ok(parsed) && std::get<UnderstandingJudgment>(parsed).understood;
        std::string why = ok(parsed) ? std::get<UnderstandingJudgment>(parsed).explanation
                                     : std::string(text::trim(raw));
        if (understood) {
            result.demonstrated.push_back(index);
            result.state_space.at(index).resolved = true;
        } else if (result.checked.empty()) {
            result.explanation = why;
        }
        result.checked.push_back(index);
    }
    return result;
}

RenderedPrompt Agents::render_student_bug_fixes(const ProblemBundle& problem,
                                                const std::vector<Turn>& history) const {
    auto slots = student_slots(student_view(problem));
    slots["conversation_history"] = render_history(history);
    return catalog_.get("student_bug_fixes").render(slots);
}

std::string Agents::simulated_bug_fix_reply(const ProblemBundle& problem, const std::vector<Turn>& history) {
    return ask(render_student_bug_fixes(problem, history));
}

CollectedFixes Agents::collect_bug_fixes(const std::string& reply) {
    auto parsed = parse_bug_fixes(reply);
    if (!ok(parsed)) return {BugFixList{}, reply, true};
    return {std::get<BugFixList>(parsed), reply, false};
}

IsomorphismVerdict Agents::check_resolution(const ProblemBundle& problem, const BugFixList& suggested) {
    const auto truth = fixes_of(problem);
    IsomorphismVerdict out;
    if (suggested.empty()) {
        for (const auto& t : truth) out.per_truth_fix.push_back({t, false, "no bug fixes suggested"});
        return out;
    }

    // A ground-truth fix repeated verbatim is trivially isomorphic to itself.
    bool identical = true;
    std::vector<FixMatch> matches;
    for (const auto& t : truth) {
        bool found = std::any_of(suggested.fixes.begin(), suggested.fixes.end(), [&](const std::string& s) {
            return text::normalize(s) == text::normalize(t);
        });
        identical = identical && found;
        matches.push_back({t, found, "suggested verbatim"});
    }
    if (identical) return {true, matches};

    auto slots = verifier_slots(problem);
    slots["suggested_bug_fixes"] = numbered(suggested.fixes);
    slots["correct_bug_fixes"] = numbered(truth);
    auto raw = ask(catalog_.get("check_resolution").render(slots));
    auto parsed = parse_isomorphism(raw, truth);
    if (!ok(parsed)) {
        out.per_truth_fix.clear();
        for (const auto& t : truth) {
            out.per_truth_fix.push_back({t, false, "unreadable verifier reply: " + std::string(text::trim(raw))});
        }
        return out;
    }
    return std::get<IsomorphismVerdict>(parsed);
}

std::string Agents::model_answer(const ProblemBundle& problem, const QuestionNode& question,
                                 const std::string& misunderstanding, const std::vector<Turn>& history) {
    auto slots = verifier_slots(problem);
    slots["instructor_question"] = question.text;
    slots["misunderstanding"] = misunderstanding.empty() ? "(none recorded)" : misunderstanding;
    slots["conversation_history"] = render_history(history);
    auto raw = ask(catalog_.get("model_answer").render(slots));
    auto parsed = parse_model_answer(raw);
    if (!ok(parsed)) throw GatewayError(GatewayErrorKind::bad_response, "empty model answer");
    return std::get<std::string>(parsed);
}

QuestionNode Agents::compose_teaching_message(const std::vector<QuestionNode>& level_questions,
                                              const std::string& model_answer) {
    if (level_questions.empty()) throw InvalidStateError("teaching needs at least one question at the level");
    const auto& last = level_questions.back();
    QuestionNode node;
    node.kind = NodeKind::teach;
    node.level = last.level;
    node.target_variable_index = last.target_variable_index;
    node.text = std::string(text::trim(model_answer)) + "\n\nWith that in mind: " + last.text;
    return node;
}

RenderedPrompt Agents::render_student_reply(const ProblemBundle& problem, const std::string& instructor_message,
                                            const std::vector<Turn>& history) const {
    auto slots = student_slots(student_view(problem));
    slots["conversation_history"] = render_history(history);
    slots["instructor_message"] = instructor_message;
    return catalog_.get("student_reply").render(slots);
}

std::string Agents::simulated_student_respond(const ProblemBundle& problem, const std::string& instructor_message,
                                              const std::vector<Turn>& history) {
    auto reply = std::string(text::trim(ask(render_student_reply(problem, instructor_message, history))));
    return reply.empty() ? "I'm not sure." : reply;
}

} // namespace socratic
