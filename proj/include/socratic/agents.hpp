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
#include <vector>

#include "socratic/gateway.hpp"
#include "socratic/model.hpp"
#include "socratic/parsers.hpp"
#include "socratic/templates.hpp"

namespace socratic {

// The only problem fields a student (simulated or rendered to a human) sees.
struct StudentView {
    std::string problem_statement;
    std::string buggy_code;
};

StudentView student_view(const ProblemBundle& problem);

// Ground-truth fix text a question must not quote: each whole fix and each
// `code span` inside one, when at least 8 characters long and not already
// part of the buggy code.
std::vector<std::string> fix_fragments(const ProblemBundle& problem);

// Case-insensitive search for any of fix_fragments() in `text`.
bool leaks_fix(std::string_view text, const ProblemBundle& problem);

struct UnderstandingResult {
    StateSpace state_space;
    std::vector<int> checked;
    std::vector<int> demonstrated;
    // Verifier's reason the first checked variable is still unresolved, if it is.
    std::string explanation;
};

struct CollectedFixes {
    BugFixList fixes;
    std::string raw_reply;
    bool parse_failed = false;
};

// Instructor, Verifier and Student calls. Stateless apart from the gateway
// and template references, so one instance can serve many sessions.
class Agents {
public:
    static constexpr const char* kNoStateTask = "Resolve all bugs in the code";

    explicit Agents(Gateway& gateway, const TemplateCatalog& catalog = TemplateCatalog::builtin());

    // Throws SessionSetupError when two replies in a row have no numbered list.
    StateSpace generate_state(const ProblemBundle& problem);

    QuestionNode generate_initial_question(const ProblemBundle& problem, const StateVariable& target);
    QuestionNode generate_sibling_question(const ProblemBundle& problem, const StateVariable& target,
                                           const std::vector<QuestionNode>& level_questions,
                                           const std::vector<Turn>& history,
                                           const std::vector<std::string>& misunderstandings);
    QuestionNode generate_child_question(const ProblemBundle& problem, const StateVariable& target,
                                         const std::vector<QuestionNode>& level_questions,
                                         const std::vector<Turn>& history, const std::string& gap);

    Verdict verify_response(const ProblemBundle& problem, const QuestionNode& question, const std::string& response);

    // One Verifier call per ordinal in `to_check`, in order. Variables judged
    // demonstrated are flipped in the returned state space.
    UnderstandingResult update_understanding(const ProblemBundle& problem, const StateSpace& state_space,
                                             const std::vector<int>& to_check, const QuestionNode& question,
                                             const std::string& response, const std::vector<Turn>& history);

    // Asks the simulated student which fixes came up in the conversation.
    std::string simulated_bug_fix_reply(const ProblemBundle& problem, const std::vector<Turn>& history);
    // Unparseable replies give an empty list with parse_failed set.
    static CollectedFixes collect_bug_fixes(const std::string& reply);

    IsomorphismVerdict check_resolution(const ProblemBundle& problem, const BugFixList& suggested);

    std::string model_answer(const ProblemBundle& problem, const QuestionNode& question,
                             const std::string& misunderstanding, const std::vector<Turn>& history);

    // Answer to the level's first question, then its latest question verbatim.
    static QuestionNode compose_teaching_message(const std::vector<QuestionNode>& level_questions,
                                                 const std::string& model_answer);

    std::string simulated_student_respond(const ProblemBundle& problem, const std::string& instructor_message,
                                          const std::vector<Turn>& history);

    // Prompt text exactly as it would be sent; used by the firewall checks.
    RenderedPrompt render_student_reply(const ProblemBundle& problem, const std::string& instructor_message,
                                        const std::vector<Turn>& history) const;
    RenderedPrompt render_student_bug_fixes(const ProblemBundle& problem, const std::vector<Turn>& history) const;

    const TemplateCatalog& catalog() const { return catalog_; }
    Gateway& gateway() { return gateway_; }

private:
    std::string ask(const RenderedPrompt& prompt, std::string_view suffix = {});
    QuestionNode question_from(const ProblemBundle& problem, const RenderedPrompt& prompt, NodeKind kind,
                               int level, int target);

    Gateway& gateway_;
    const TemplateCatalog& catalog_;
};

std::string render_history(const std::vector<Turn>& history);
std::string numbered(const std::vector<std::string>& items);

} // namespace socratic
