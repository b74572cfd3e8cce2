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

#include "socratic/parsers.hpp"

#include <algorithm>
#include <optional>
#include <regex>
#include <set>

#include "socratic/text.hpp"

namespace socratic {

namespace {

using text::trim;

std::string_view strip_decor(std::string_view s) {
    s = trim(s);
    while (!s.empty() && (s.front() == '*' || s.front() == '#' || s.front() == '>' || s.front() == '`')) {
        s.remove_prefix(1);
        s = trim(s);
    }
    while (!s.empty() && (s.back() == '*' || s.back() == '`')) {
        s.remove_suffix(1);
        s = trim(s);
    }
    return s;
}

std::string_view strip_quotes(std::string_view s) {
    s = trim(s);
    while (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        s = trim(s.substr(1, s.size() - 2));
    }
    return s;
}

// Leading True/False/Yes/No word of a value, ignoring quotes and markup.
std::optional<bool> leading_bool(std::string_view value) {
    auto s = strip_decor(value);
    while (!s.empty() && (s.front() == '"' || s.front() == '\'' || s.front() == '*' || s.front() == '<')) {
        s.remove_prefix(1);
    }
    std::size_t n = 0;
    while (n < s.size() && std::isalpha(static_cast<unsigned char>(s[n]))) ++n;
    auto word = text::to_lower(s.substr(0, n));
    if (word == "true" || word == "yes") return true;
    if (word == "false" || word == "no") return false;
    return std::nullopt;
}

// Text after the boolean word, with separators like " - " or ". " removed.
std::string after_bool(std::string_view value) {
    auto s = strip_decor(value);
    std::size_t i = 0;
    while (i < s.size() && !std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
    while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
    s = s.substr(i);
    while (!s.empty() && (std::string_view("\"'*>,.;:-/ \t").find(s.front()) != std::string_view::npos ||
                          static_cast<unsigned char>(s.front()) >= 0x80)) {
        // 0x80+ covers en/em dashes used as separators.
        s.remove_prefix(1);
    }
    return std::string(trim(s));
}

struct Label {
    std::size_t line = 0;
    std::string value;
};

// Finds "key: value" (case-insensitive, tolerant of quotes/markdown around key).
std::optional<Label> find_label(const std::vector<std::string>& lines, std::string_view key) {
    const auto lkey = text::to_lower(key);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto s = trim(lines[i]);
        while (!s.empty() && std::string_view("-*#>\"' `").find(s.front()) != std::string_view::npos) {
            s.remove_prefix(1);
        }
        if (s.size() < lkey.size() || text::to_lower(s.substr(0, lkey.size())) != lkey) continue;
        auto rest = s.substr(lkey.size());
        while (!rest.empty() && std::string_view("\"'*` ").find(rest.front()) != std::string_view::npos) {
            rest.remove_prefix(1);
        }
        if (rest.empty() || rest.front() != ':') continue;
        rest.remove_prefix(1);
        return Label{i, std::string(trim(rest))};
    }
    return std::nullopt;
}

// Value of `key` plus every following line, for free-text trailing fields.
std::optional<std::string> trailing_field(const std::vector<std::string>& lines, std::string_view key) {
    auto label = find_label(lines, key);
    if (!label) return std::nullopt;
    std::string out = label->value;
    for (std::size_t i = label->line + 1; i < lines.size(); ++i) {
        out += "\n";
        out += lines[i];
    }
    return std::string(trim(out));
}

std::optional<std::pair<bool, bool>> compact_verdict(std::string_view reply, std::string& rest) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    auto flat = std::string(trim(reply));
    while (parts.size() < 2) {
        auto slash = flat.find('/', start);
        if (slash == std::string::npos) return std::nullopt;
        parts.emplace_back(trim(std::string_view(flat).substr(start, slash - start)));
        start = slash + 1;
    }
    auto a = leading_bool(parts[0]);
    auto b = leading_bool(parts[1]);
    if (!a || !b || text::to_lower(strip_decor(parts[0])).size() > 8 ||
        text::to_lower(strip_decor(parts[1])).size() > 8) {
        return std::nullopt;
    }
    rest = std::string(trim(std::string_view(flat).substr(start)));
    return std::make_pair(*a, *b);
}

} // namespace

Parsed<ParsedStateRepresentation> parse_state_representation(std::string_view reply) {
    static const std::regex item(R"(^\s*(\d+)\s*[.)]\s*(.*)$)");
    static const std::regex flag_prefix(R"(^(?:(?:\xCF\x84|tau|t|T|state|State)\s*_?\s*\d*\s*[:=]\s*)?(?:\*\*)?(?:True|False|TRUE|FALSE|true|false)(?:\*\*)?\s*[,:;-]\s*)");
    static const std::regex tuple_form(R"(^\(\s*(?:True|False|true|false)\s*,\s*(.*)\)\s*\.?$)");

    std::vector<std::string> items;
    int expected = 1;
    bool in_list = false;
    for (const auto& raw : text::split_lines(reply)) {
        std::smatch m;
        if (std::regex_match(raw, m, item)) {
            int n = std::stoi(m[1].str());
            if (in_list && n == 1) break;  // a second list; keep the first
            if (n != expected) {
                if (!in_list) continue;
                break;
            }
            in_list = true;
            ++expected;
            items.push_back(m[2].str());
            continue;
        }
        if (!in_list) continue;
        if (trim(raw).empty()) continue;
        if (!raw.empty() && (raw.front() == ' ' || raw.front() == '\t')) {
            items.back() += " ";
            items.back() += trim(raw);
            continue;
        }
        break;
    }

    ParsedStateRepresentation out;
    std::set<std::string> seen;
    for (auto& it : items) {
        std::string task(strip_decor(it));
        std::smatch m;
        if (std::regex_match(task, m, tuple_form)) task = m[1].str();
        task = std::regex_replace(task, flag_prefix, "", std::regex_constants::format_first_only);
        task = std::string(strip_quotes(strip_decor(task)));
        if (task.empty()) continue;
        if (seen.insert(task).second) out.tasks.push_back(std::move(task));
    }
    if (out.tasks.empty()) return ParseError{"no numbered task list found"};
    return out;
}

Parsed<Verdict> parse_verdict(std::string_view reply) {
    auto lines = text::split_lines(reply);
    auto addresses = find_label(lines, "answer_addresses_question");
    auto no_mistakes = find_label(lines, "answer_has_no_mistakes");
    if (addresses && no_mistakes) {
        auto a = leading_bool(addresses->value);
        auto b = leading_bool(no_mistakes->value);
        if (!a || !b) return ParseError{"verdict labels present but values are not True/False"};
        Verdict v{*a, *b, {}};
        if (auto expl = trailing_field(lines, "explanation")) {
            v.explanation = *expl;
        } else {
            std::vector<std::string> other;
            for (std::size_t i = 0; i < lines.size(); ++i) {
                if (i != addresses->line && i != no_mistakes->line && !trim(lines[i]).empty()) {
                    other.emplace_back(trim(lines[i]));
                }
            }
            v.explanation = text::join(other, "\n");
        }
        if (v.explanation.empty()) v.explanation = "(no explanation given)";
        return v;
    }
    std::string rest;
    if (auto pair = compact_verdict(reply, rest)) {
        return Verdict{pair->first, pair->second, rest.empty() ? "(no explanation given)" : rest};
    }
    return ParseError{"could not find answer_addresses_question / answer_has_no_mistakes"};
}

Parsed<UnderstandingJudgment> parse_understanding(std::string_view reply) {
    auto lines = text::split_lines(reply);
    for (auto key : {"understood", "target_understanding_demonstrated", "answer"}) {
        if (auto label = find_label(lines, key)) {
            auto b = leading_bool(label->value);
            if (!b) return ParseError{std::string(key) + " is not True/False"};
            UnderstandingJudgment j{*b, {}};
            if (auto expl = trailing_field(lines, "explanation")) {
                j.explanation = *expl;
            } else {
                j.explanation = after_bool(label->value);
            }
            if (j.explanation.empty()) j.explanation = "(no explanation given)";
            return j;
        }
    }
    auto first = strip_decor(reply);
    if (auto b = leading_bool(first)) {
        auto rest = after_bool(first);
        return UnderstandingJudgment{*b, rest.empty() ? "(no explanation given)" : rest};
    }
    return ParseError{"could not find an 'understood: True/False' line"};
}

Parsed<BugFixList> parse_bug_fixes(std::string_view reply) {
    auto body = strip_quotes(strip_decor(reply));
    if (body.empty()) return ParseError{"empty bug-fix reply"};
    {
        auto lower = text::to_lower(body);
        if (lower.rfind("none", 0) == 0 &&
            (lower.size() == 4 || !std::isalnum(static_cast<unsigned char>(lower[4])))) {
            return BugFixList{};
        }
    }

    static const std::regex labeled(R"(^[\s*\-"']*bug_fix_\d+["'*\s]*:\s*(.*)$)", std::regex::icase);
    static const std::regex numbered(R"(^\s*\d+\s*[.)]\s+(.*)$)");
    static const std::regex bullet(R"(^\s*[-*•]\s+(.*)$)");

    auto lines = text::split_lines(body);
    std::vector<std::string> fixes;
    for (const auto& line : lines) {
        std::smatch m;
        if (std::regex_match(line, m, labeled)) fixes.emplace_back(strip_quotes(m[1].str()));
    }
    if (fixes.empty()) {
        for (const auto* pattern : {&numbered, &bullet}) {
            for (const auto& line : lines) {
                std::smatch m;
                if (std::regex_match(line, m, *pattern)) fixes.emplace_back(strip_quotes(m[1].str()));
            }
            if (!fixes.empty()) break;
        }
    }
    auto list = BugFixList::from(fixes);
    if (list.empty()) return ParseError{"reply is neither \"None\" nor a list of bug fixes"};
    return list;
}

Parsed<IsomorphismVerdict> parse_isomorphism(std::string_view reply, const std::vector<std::string>& truth_fixes) {
    static const std::regex labeled(R"(^[\s*\-"']*correct_bug_fix_(\d+)["'*\s]*:\s*(.*)$)", std::regex::icase);
    static const std::regex numbered(R"(^\s*(\d+)\s*[.)]\s*(.*)$)");

    const auto n = truth_fixes.size();
    std::vector<std::optional<FixMatch>> found(n);
    auto lines = text::split_lines(reply);
    for (const auto* pattern : {&labeled, &numbered}) {
        for (const auto& line : lines) {
            std::smatch m;
            if (!std::regex_match(line, m, *pattern)) continue;
            auto idx = std::stoul(m[1].str());
            auto b = leading_bool(m[2].str());
            if (idx < 1 || idx > n || !b || found[idx - 1]) continue;
            found[idx - 1] = FixMatch{truth_fixes[idx - 1], *b, after_bool(m[2].str())};
        }
        if (std::any_of(found.begin(), found.end(), [](const auto& f) { return f.has_value(); })) break;
    }

    IsomorphismVerdict out;
    auto matched = std::count_if(found.begin(), found.end(), [](const auto& f) { return f.has_value(); });
    if (matched == static_cast<long>(n) && n > 0) {
        for (auto& f : found) out.per_truth_fix.push_back(*f);
    } else if (matched == 0) {
        std::optional<bool> overall;
        if (auto label = find_label(lines, "answer")) overall = leading_bool(label->value);
        if (!overall) overall = leading_bool(reply);
        if (!overall) return ParseError{"no per-fix or overall True/False found"};
        auto why = std::string(trim(reply));
        for (const auto& t : truth_fixes) out.per_truth_fix.push_back({t, *overall, why});
    } else {
        return ParseError{"verdicts given for only some of the correct bug fixes"};
    }
    out.all_covered = std::all_of(out.per_truth_fix.begin(), out.per_truth_fix.end(),
                                  [](const auto& f) { return f.matched; });
    return out;
}

Parsed<std::string> parse_question(std::string_view reply) {
    auto s = strip_decor(reply);
    static const std::regex label(R"(^(?:follow-up\s+)?question(?:\s*\d+)?\s*:\s*)", std::regex::icase);
    auto q = std::regex_replace(std::string(s), label, "", std::regex_constants::format_first_only);
    q = std::string(strip_quotes(strip_decor(q)));
    if (q.empty()) return ParseError{"empty question"};
    return q;
}

Parsed<std::string> parse_model_answer(std::string_view reply) {
    auto lines = text::split_lines(reply);
    std::string answer;
    if (auto field = trailing_field(lines, "model_answer")) {
        answer = *field;
    } else {
        answer = std::string(trim(reply));
    }
    answer = std::string(strip_quotes(answer));
    if (answer.empty()) return ParseError{"empty model answer"};
    return answer;
}

} // namespace socratic
