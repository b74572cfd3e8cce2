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
#include <vector>

#include "socratic/errors.hpp"
#include "socratic/model.hpp"

namespace socratic {

inline constexpr const char* kProblemSetFormat = "1";

struct ProblemSetFile {
    std::string format_version = kProblemSetFormat;
    std::vector<ProblemBundle> problems;
    // Top-level keys we do not model.
    Json extra = Json::object();

    bool operator==(const ProblemSetFile&) const = default;
};

enum class Severity { warning, error };

struct Finding {
    Severity severity = Severity::error;
    std::string problem_id;
    std::string message;

    bool operator==(const Finding&) const = default;
};

std::string to_string(Severity severity);

// ConfigError when the file cannot be read; SchemaError with a
// "problems[i].field" path for malformed records.
ProblemSetFile load_problem_set(const std::string& path);
ProblemSetFile problem_set_from_json(const Json& j);
Json problem_set_to_json(const ProblemSetFile& set);
void save_problem_set(const ProblemSetFile& set, const std::string& path);

// Structural findings; never throws.
std::vector<Finding> validate(const ProblemSetFile& set);
bool has_errors(const std::vector<Finding>& findings);

// Records of the single-bug benchmark: {problem, buggy, fixes, description}
// objects, optionally with "id" and "correct". Each record maps to a bundle
// with num_bugs = 1 or to an AdapterError naming the record.
class AdapterError : public Error {
public:
    AdapterError(std::size_t record, const std::string& what)
        : Error("record " + std::to_string(record) + ": " + what), record_(record) {}
    std::size_t record() const { return record_; }

private:
    std::size_t record_;
};

ProblemBundle adapt_single_bug_record(const Json& record, std::size_t index);
ProblemSetFile load_single_bug_benchmark(const std::string& path);

// Keeps problems with the given bug count; 0 keeps all.
std::vector<ProblemBundle> filter_by_bugs(const std::vector<ProblemBundle>& problems, int num_bugs);

} // namespace socratic
