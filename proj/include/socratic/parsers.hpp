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
#include <variant>
#include <vector>

#include "socratic/model.hpp"

// Parsers for model completions. Each returns the typed value or a ParseError;
// none of them throw on bad input.
namespace socratic {

struct ParseError {
    std::string message;
    bool operator==(const ParseError&) const = default;
};

template <typename T>
using Parsed = std::variant<T, ParseError>;

template <typename T>
bool ok(const Parsed<T>& p) {
    return std::holds_alternative<T>(p);
}

struct ParsedStateRepresentation {
    std::vector<std::string> tasks;
};

struct UnderstandingJudgment {
    bool understood = false;
    std::string explanation;
};

// Numbered list, one task per item. Accepts "1. task", "1) task" and the
// "1. t1: False, task" style; duplicate tasks are dropped.
Parsed<ParsedStateRepresentation> parse_state_representation(std::string_view reply);

// Labeled lines (answer_addresses_question / answer_has_no_mistakes /
// explanation) or the compact "True / False / reason" form.
Parsed<Verdict> parse_verdict(std::string_view reply);

Parsed<UnderstandingJudgment> parse_understanding(std::string_view reply);

// "None" gives an empty list. Otherwise bug_fix_N lines, numbered or bulleted
// items. Free text with no list structure is a parse error.
Parsed<BugFixList> parse_bug_fixes(std::string_view reply);

// One verdict per ground-truth fix ("correct_bug_fix_i: True - why"), or a
// single overall True/False applied to all of them.
Parsed<IsomorphismVerdict> parse_isomorphism(std::string_view reply, const std::vector<std::string>& truth_fixes);

Parsed<std::string> parse_question(std::string_view reply);
Parsed<std::string> parse_model_answer(std::string_view reply);

} // namespace socratic
