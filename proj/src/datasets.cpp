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

#include "socratic/datasets.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "socratic/errors.hpp"
#include "socratic/serialize.hpp"
#include "socratic/text.hpp"

namespace socratic {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json parse_json(const std::string& body, const std::string& path) {
    try {
        return Json::parse(body);
    } catch (const Json::parse_error& e) {
        throw SchemaError("", "'" + path + "' is not valid JSON: " + e.what());
    }
}

std::string string_field(const Json& record, const char* key, std::size_t index, bool required) {
    auto it = record.find(key);
    if (it == record.end() || it->is_null()) {
        if (required) throw AdapterError(index, std::string("missing '") + key + "'");
        return {};
    }
    if (!it->is_string()) throw AdapterError(index, std::string("'") + key + "' must be a string");
    // Code fields keep their exact whitespace.
    auto value = it->get<std::string>();
    if (required && text::trim(value).empty()) throw AdapterError(index, std::string("'") + key + "' is empty");
    return value;
}

} // namespace

std::string to_string(Severity severity) { return severity == Severity::error ? "error" : "warning"; }

ProblemSetFile problem_set_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("", "problem set must be a JSON object");
    ProblemSetFile set;
    if (auto it = j.find("format_version"); it != j.end()) {
        if (!it->is_string()) throw SchemaError("format_version", "expected a string");
        set.format_version = it->get<std::string>();
    }
    auto problems = j.find("problems");
    if (problems == j.end()) throw SchemaError("problems", "missing required field");
    if (!problems->is_array()) throw SchemaError("problems", "expected an array");
    for (std::size_t i = 0; i < problems->size(); ++i) {
        set.problems.push_back(problem_from_json((*problems)[i], "problems[" + std::to_string(i) + "]"));
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "format_version" && key != "problems") set.extra[key] = value;
    }
    return set;
}

Json problem_set_to_json(const ProblemSetFile& set) {
    Json j = set.extra.is_object() ? set.extra : Json::object();
    j["format_version"] = set.format_version;
    j["problems"] = set.problems;
    return j;
}

ProblemSetFile load_problem_set(const std::string& path) {
    return problem_set_from_json(parse_json(read_file(path), path));
}

void save_problem_set(const ProblemSetFile& set, const std::string& path) {
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << problem_set_to_json(set).dump(2) << "\n";
}

std::vector<Finding> validate(const ProblemSetFile& set) {
    std::vector<Finding> out;
    std::set<std::string> seen;
    for (const auto& p : set.problems) {
        auto add = [&](Severity sev, std::string msg) { out.push_back({sev, p.id, std::move(msg)}); };
        if (!seen.insert(p.id).second) add(Severity::error, "duplicate id");
        if (p.bugs.empty()) add(Severity::error, "no bugs listed");
        if (p.num_bugs != static_cast<int>(p.bugs.size())) {
            add(Severity::error, "num_bugs mismatch: declares " + std::to_string(p.num_bugs) + ", lists " +
                                     std::to_string(p.bugs.size()));
        }
        for (std::size_t i = 0; i < p.bugs.size(); ++i) {
            if (text::trim(p.bugs[i].fix).empty()) add(Severity::error, "empty fix for bug " + std::to_string(i + 1));
            if (text::trim(p.bugs[i].description).empty()) {
                add(Severity::error, "empty description for bug " + std::to_string(i + 1));
            }
        }
        if (text::trim(p.buggy_code) == text::trim(p.correct_code)) add(Severity::error, "no injected bug");
        bool unlabeled = std::any_of(p.bugs.begin(), p.bugs.end(), [](const BugRecord& b) { return !b.kind; });
        if (unlabeled && !p.bugs.empty()) add(Severity::warning, "missing bug_kind labels");
    }
    return out;
}

bool has_errors(const std::vector<Finding>& findings) {
    return std::any_of(findings.begin(), findings.end(),
                       [](const Finding& f) { return f.severity == Severity::error; });
}

ProblemBundle adapt_single_bug_record(const Json& record, std::size_t index) {
    if (!record.is_object()) throw AdapterError(index, "expected an object");
    ProblemBundle p;
    p.id = std::string(text::trim(string_field(record, "id", index, false)));
    if (p.id.empty()) p.id = "single-" + std::to_string(index + 1);
    p.base_id = p.id;
    p.problem_statement = string_field(record, "problem", index, true);
    p.buggy_code = string_field(record, "buggy", index, true);
    p.correct_code = string_field(record, "correct", index, false);
    if (text::trim(p.correct_code).empty()) p.correct_code = "(correct code not provided)";

    std::vector<std::string> fixes;
    auto it = record.find("fixes");
    if (it == record.end() || it->is_null()) throw AdapterError(index, "missing 'fixes'");
    if (it->is_string()) {
        fixes.push_back(it->get<std::string>());
    } else if (it->is_array()) {
        for (const auto& f : *it) {
            if (!f.is_string()) throw AdapterError(index, "'fixes' entries must be strings");
            fixes.push_back(f.get<std::string>());
        }
    } else {
        throw AdapterError(index, "'fixes' must be a string or an array of strings");
    }
    auto fix = text::join(BugFixList::from(fixes).fixes, "; ");
    if (fix.empty()) throw AdapterError(index, "'fixes' is empty");

    p.bugs.push_back({string_field(record, "description", index, true), fix, std::nullopt});
    p.num_bugs = 1;
    return p;
}

ProblemSetFile load_single_bug_benchmark(const std::string& path) {
    auto body = read_file(path);
    std::vector<Json> records;
    auto first = body.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && body[first] == '[') {
        auto j = parse_json(body, path);
        records.assign(j.begin(), j.end());
    } else {
        // JSON lines
        for (const auto& line : text::split_lines(body)) {
            if (text::trim(line).empty()) continue;
            records.push_back(parse_json(line, path));
        }
    }
    ProblemSetFile set;
    for (std::size_t i = 0; i < records.size(); ++i) set.problems.push_back(adapt_single_bug_record(records[i], i));
    return set;
}

std::vector<ProblemBundle> filter_by_bugs(const std::vector<ProblemBundle>& problems, int num_bugs) {
    if (num_bugs == 0) return problems;
    std::vector<ProblemBundle> out;
    std::copy_if(problems.begin(), problems.end(), std::back_inserter(out),
                 [&](const ProblemBundle& p) { return p.num_bugs == num_bugs; });
    return out;
}

} // namespace socratic
