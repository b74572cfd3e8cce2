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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "socratic/errors.hpp"
#include "socratic/model.hpp"

namespace socratic {

using IsomorphismOracle = std::function<bool(const std::string& suggested, const std::string& truth)>;

// Lowercased, whitespace-collapsed string equality.
IsomorphismOracle normalized_equality_oracle();

// For each ground-truth fix: does some suggested fix match it?
std::vector<bool> matched_truth(const BugFixList& suggested, const std::vector<BugRecord>& truth,
                                const IsomorphismOracle& oracle);

// Fraction of ground-truth fixes with a matching suggested fix, in [0, 1].
double success_rate(const BugFixList& suggested, const std::vector<BugRecord>& truth,
                    const IsomorphismOracle& oracle);

// Student responses in a transcript (teaching exchanges included).
int transcript_turns(const Transcript& transcript);
// Instructor messages that expect an answer: questions and teaching.
int transcript_questions(const Transcript& transcript);
double avg_turns(const std::vector<Transcript>& transcripts);

struct QualitativeTriple {
    int relevant = 0;
    int indirect = 0;
    int logic = 0;
    bool operator==(const QualitativeTriple&) const = default;
};

struct AnnotationRecord {
    std::string transcript_id;
    std::string annotator;
    std::vector<QualitativeTriple> questions;
};

struct QualitativeScores {
    double relevant = 0;
    double indirect = 0;
    double logic = 0;
};

class AnnotationMismatchError : public Error {
public:
    using Error::Error;
};

std::vector<AnnotationRecord> annotations_from_json(const Json& j);
std::vector<AnnotationRecord> load_annotations(const std::string& path);

// Per transcript id: annotators averaged per question, then questions
// averaged, scaled by 100. `question_counts` maps transcript id to the
// number of instructor questions it contains.
std::map<std::string, QualitativeScores> per_problem_qualitative(const std::vector<AnnotationRecord>& annotations,
                                                                 const std::map<std::string, int>& question_counts);
// Mean over problems of the per-problem scores.
QualitativeScores aggregate_qualitative(const std::vector<AnnotationRecord>& annotations,
                                        const std::map<std::string, int>& question_counts);

// One problem's ranking: (method, rank), lower rank is better.
using Ranking = std::vector<std::pair<std::string, int>>;

struct PairwisePreference {
    std::string a;
    std::string b;
    // Share of problems ranking both where a is strictly above b, x100.
    double percent = 0;
    int problems = 0;
};

class DuplicateRankError : public Error {
public:
    using Error::Error;
};

std::vector<PairwisePreference> side_by_side(const std::vector<Ranking>& rankings);

enum class OracleChoice { normalized, transcript };

struct ProblemMetrics {
    std::string transcript_id;
    std::string problem_id;
    int num_bugs = 0;
    double success = 0;  // percent
    int turns = 0;
    std::optional<TerminationReason> termination;
    // Per bug kind present in the problem: percent of that kind's fixes matched.
    std::map<std::string, double> success_by_kind;
    std::optional<QualitativeScores> qualitative;
};

struct GroupMetrics {
    std::string label;
    int problems = 0;
    double success = 0;
    double avg_turns = 0;
    std::optional<QualitativeScores> qualitative;
};

struct MetricReport {
    std::vector<ProblemMetrics> problems;
    // "1-bug", "2-bug", "3-bug", ... then "all".
    std::vector<GroupMetrics> by_bug_count;
    // "syntactical", "conceptual" when labels exist.
    std::vector<GroupMetrics> by_kind;
};

MetricReport build_report(const std::vector<Transcript>& transcripts,
                          const std::vector<AnnotationRecord>& annotations = {},
                          OracleChoice oracle = OracleChoice::normalized);
Json report_to_json(const MetricReport& report);
std::string report_table(const MetricReport& report);

} // namespace socratic
