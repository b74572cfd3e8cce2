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

#include "socratic/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "socratic/serialize.hpp"
#include "socratic/text.hpp"

namespace socratic {

namespace {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0;
    double sum = 0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

QualitativeScores mean(const std::vector<QualitativeScores>& xs) {
    QualitativeScores out;
    for (const auto& x : xs) {
        out.relevant += x.relevant;
        out.indirect += x.indirect;
        out.logic += x.logic;
    }
    if (!xs.empty()) {
        auto n = static_cast<double>(xs.size());
        out.relevant /= n;
        out.indirect /= n;
        out.logic /= n;
    }
    return out;
}

std::vector<bool> transcript_matches(const Transcript& t, const SessionState& final_state, OracleChoice oracle) {
    const auto& truth = final_state.problem.bugs;
    if (oracle == OracleChoice::normalized) {
        return matched_truth(final_state.collected_fixes, truth, normalized_equality_oracle());
    }
    std::vector<bool> out(truth.size(), false);
    for (auto it = t.events.rbegin(); it != t.events.rend(); ++it) {
        if (const auto* rc = std::get_if<ResolutionChecked>(&it->payload)) {
            for (std::size_t i = 0; i < out.size() && i < rc->verdict.per_truth_fix.size(); ++i) {
                out[i] = rc->verdict.per_truth_fix[i].matched;
            }
            break;
        }
    }
    return out;
}

Json scores_json(const std::optional<QualitativeScores>& q) {
    if (!q) return nullptr;
    return Json{{"relevant", q->relevant}, {"indirect", q->indirect}, {"logic", q->logic}};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

IsomorphismOracle normalized_equality_oracle() {
    return [](const std::string& a, const std::string& b) { return text::normalize(a) == text::normalize(b); };
}

std::vector<bool> matched_truth(const BugFixList& suggested, const std::vector<BugRecord>& truth,
                                const IsomorphismOracle& oracle) {
    std::vector<bool> out;
    for (const auto& t : truth) {
        out.push_back(std::any_of(suggested.fixes.begin(), suggested.fixes.end(),
                                  [&](const std::string& s) { return oracle(s, t.fix); }));
    }
    return out;
}

double success_rate(const BugFixList& suggested, const std::vector<BugRecord>& truth,
                    const IsomorphismOracle& oracle) {
    if (truth.empty()) throw InvalidProblemError("success rate needs at least one ground-truth fix");
    auto m = matched_truth(suggested, truth, oracle);
    return static_cast<double>(std::count(m.begin(), m.end(), true)) / static_cast<double>(truth.size());
}

int transcript_turns(const Transcript& transcript) {
    return static_cast<int>(std::count_if(transcript.events.begin(), transcript.events.end(), [](const auto& e) {
        return std::holds_alternative<ResponseReceived>(e.payload);
    }));
}

int transcript_questions(const Transcript& transcript) {
    return static_cast<int>(std::count_if(transcript.events.begin(), transcript.events.end(), [](const auto& e) {
        return std::holds_alternative<QuestionAsked>(e.payload) ||
               std::holds_alternative<TeachingDelivered>(e.payload);
    }));
}

double avg_turns(const std::vector<Transcript>& transcripts) {
    if (transcripts.empty()) throw InvalidStateError("avg_turns needs at least one transcript");
    std::vector<double> turns;
    for (const auto& t : transcripts) turns.push_back(transcript_turns(t));
    return mean(turns);
}

std::vector<AnnotationRecord> annotations_from_json(const Json& j) {
    const Json& list = j.is_object() ? j.at("annotations") : j;
    if (!list.is_array()) throw SchemaError("annotations", "expected an array");
    std::vector<AnnotationRecord> out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        auto path = "annotations[" + std::to_string(i) + "]";
        const auto& a = list[i];
        try {
            AnnotationRecord r;
            r.transcript_id = a.at("transcript_id").get<std::string>();
            r.annotator = a.value("annotator", std::string("annotator"));
            for (const auto& q : a.at("questions")) {
                QualitativeTriple t;
                if (q.is_array()) {
                    t = {q.at(0).get<int>(), q.at(1).get<int>(), q.at(2).get<int>()};
                } else {
                    t = {q.at("relevant").get<int>(), q.at("indirect").get<int>(), q.at("logic").get<int>()};
                }
                for (int v : {t.relevant, t.indirect, t.logic}) {
                    if (v != 0 && v != 1) throw SchemaError(path, "scores must be 0 or 1");
                }
                r.questions.push_back(t);
            }
            out.push_back(std::move(r));
        } catch (const Json::exception& e) {
            throw SchemaError(path, e.what());
        }
    }
    return out;
}

std::vector<AnnotationRecord> load_annotations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open annotations '" + path + "'");
    try {
        return annotations_from_json(Json::parse(in));
    } catch (const Json::parse_error& e) {
        throw SchemaError("", "'" + path + "': " + e.what());
    }
}

std::map<std::string, QualitativeScores> per_problem_qualitative(const std::vector<AnnotationRecord>& annotations,
                                                                 const std::map<std::string, int>& question_counts) {
    std::map<std::string, std::vector<const AnnotationRecord*>> grouped;
    for (const auto& a : annotations) {
        auto it = question_counts.find(a.transcript_id);
        if (it == question_counts.end()) {
            throw AnnotationMismatchError("annotation for unknown transcript '" + a.transcript_id + "'");
        }
        if (static_cast<int>(a.questions.size()) != it->second) {
            throw AnnotationMismatchError("transcript '" + a.transcript_id + "' has " + std::to_string(it->second) +
                                          " questions but annotator '" + a.annotator + "' scored " +
                                          std::to_string(a.questions.size()));
        }
        grouped[a.transcript_id].push_back(&a);
    }
    std::map<std::string, QualitativeScores> out;
    for (const auto& [id, records] : grouped) {
        const auto n = records.front()->questions.size();
        std::vector<QualitativeScores> per_question;
        for (std::size_t q = 0; q < n; ++q) {
            std::vector<QualitativeScores> votes;
            for (const auto* r : records) {
                const auto& t = r->questions[q];
                votes.push_back({double(t.relevant), double(t.indirect), double(t.logic)});
            }
            per_question.push_back(mean(votes));
        }
        auto m = mean(per_question);
        out[id] = {m.relevant * 100, m.indirect * 100, m.logic * 100};
    }
    return out;
}

QualitativeScores aggregate_qualitative(const std::vector<AnnotationRecord>& annotations,
                                        const std::map<std::string, int>& question_counts) {
    std::vector<QualitativeScores> per_problem;
    for (const auto& [id, s] : per_problem_qualitative(annotations, question_counts)) per_problem.push_back(s);
    return mean(per_problem);
}

std::vector<PairwisePreference> side_by_side(const std::vector<Ranking>& rankings) {
    std::set<std::string> methods;
    for (std::size_t p = 0; p < rankings.size(); ++p) {
        std::set<std::string> seen;
        for (const auto& [method, rank] : rankings[p]) {
            if (!seen.insert(method).second) {
                throw DuplicateRankError("problem " + std::to_string(p) + " ranks '" + method + "' more than once");
            }
            methods.insert(method);
        }
    }
    std::vector<PairwisePreference> out;
    for (const auto& a : methods) {
        for (const auto& b : methods) {
            if (a == b) continue;
            int both = 0;
            int wins = 0;
            for (const auto& ranking : rankings) {
                std::optional<int> ra, rb;
                for (const auto& [m, r] : ranking) {
                    if (m == a) ra = r;
                    if (m == b) rb = r;
                }
                if (!ra || !rb) continue;
                ++both;
                if (*ra < *rb) ++wins;
            }
            if (both == 0) continue;
            out.push_back({a, b, 100.0 * wins / both, both});
        }
    }
    return out;
}

MetricReport build_report(const std::vector<Transcript>& transcripts, const std::vector<AnnotationRecord>& annotations,
                          OracleChoice oracle) {
    MetricReport report;
    std::map<std::string, int> question_counts;
    for (const auto& t : transcripts) question_counts[t.header.session_id] = transcript_questions(t);
    auto qualitative = per_problem_qualitative(annotations, question_counts);

    for (const auto& t : transcripts) {
        auto state = replay(t);
        ProblemMetrics m;
        m.transcript_id = t.header.session_id;
        m.problem_id = t.header.problem_id;
        m.num_bugs = state.problem.num_bugs;
        m.turns = state.total_turns;
        m.termination = state.termination_reason;
        auto matches = transcript_matches(t, state, oracle);
        m.success = 100.0 * static_cast<double>(std::count(matches.begin(), matches.end(), true)) /
                    static_cast<double>(std::max<std::size_t>(1, matches.size()));
        std::map<std::string, std::pair<int, int>> kinds;  // kind -> (matched, total)
        for (std::size_t i = 0; i < state.problem.bugs.size(); ++i) {
            if (!state.problem.bugs[i].kind) continue;
            auto& [hit, total] = kinds[to_string(*state.problem.bugs[i].kind)];
            ++total;
            if (matches[i]) ++hit;
        }
        for (const auto& [kind, counts] : kinds) m.success_by_kind[kind] = 100.0 * counts.first / counts.second;
        if (auto it = qualitative.find(m.transcript_id); it != qualitative.end()) m.qualitative = it->second;
        report.problems.push_back(std::move(m));
    }

    auto group = [&](const std::string& label, auto include, auto success_of) {
        GroupMetrics g;
        g.label = label;
        std::vector<double> success, turns;
        std::vector<QualitativeScores> q;
        for (const auto& p : report.problems) {
            if (!include(p)) continue;
            ++g.problems;
            success.push_back(success_of(p));
            turns.push_back(p.turns);
            if (p.qualitative) q.push_back(*p.qualitative);
        }
        g.success = mean(success);
        g.avg_turns = mean(turns);
        if (!q.empty()) g.qualitative = mean(q);
        return g;
    };

    std::set<int> counts;
    for (const auto& p : report.problems) counts.insert(p.num_bugs);
    for (int n : counts) {
        report.by_bug_count.push_back(group(
            std::to_string(n) + "-bug", [n](const ProblemMetrics& p) { return p.num_bugs == n; },
            [](const ProblemMetrics& p) { return p.success; }));
    }
    if (!report.problems.empty()) {
        report.by_bug_count.push_back(group(
            "all", [](const ProblemMetrics&) { return true; }, [](const ProblemMetrics& p) { return p.success; }));
    }
    for (const std::string kind : {"syntactical", "conceptual"}) {
        auto g = group(
            kind, [&](const ProblemMetrics& p) { return p.success_by_kind.count(kind) > 0; },
            [&](const ProblemMetrics& p) { return p.success_by_kind.at(kind); });
        if (g.problems > 0) report.by_kind.push_back(g);
    }
    return report;
}

Json report_to_json(const MetricReport& report) {
    Json problems = Json::array();
    for (const auto& p : report.problems) {
        problems.push_back({{"transcript_id", p.transcript_id},
                            {"problem_id", p.problem_id},
                            {"num_bugs", p.num_bugs},
                            {"success", p.success},
                            {"turns", p.turns},
                            {"termination_reason", p.termination ? Json(to_string(*p.termination)) : Json(nullptr)},
                            {"success_by_kind", p.success_by_kind},
                            {"qualitative", scores_json(p.qualitative)}});
    }
    auto groups = [](const std::vector<GroupMetrics>& gs) {
        Json out = Json::array();
        for (const auto& g : gs) {
            out.push_back({{"label", g.label},
                           {"problems", g.problems},
                           {"success", g.success},
                           {"avg_turns", g.avg_turns},
                           {"qualitative", scores_json(g.qualitative)}});
        }
        return out;
    };
    return Json{{"problems", problems},
                {"by_bug_count", groups(report.by_bug_count)},
                {"by_kind", groups(report.by_kind)}};
}

std::string report_table(const MetricReport& report) {
    auto row = [](const GroupMetrics& g) {
        char buf[160];
        auto q = [&](double QualitativeScores::*f) { return g.qualitative ? fmt((*g.qualitative).*f) : "-"; };
        std::snprintf(buf, sizeof buf, "%-12s %8d %9s %9s %9s %9s %9s\n", g.label.c_str(), g.problems,
                      fmt(g.success).c_str(), fmt(g.avg_turns).c_str(), q(&QualitativeScores::relevant).c_str(),
                      q(&QualitativeScores::indirect).c_str(), q(&QualitativeScores::logic).c_str());
        return std::string(buf);
    };
    std::string header;
    {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-12s %8s %9s %9s %9s %9s %9s\n", "setting", "problems", "success",
                      "avg_turns", "relevant", "indirect", "logic");
        header = buf;
    }
    std::string out = header;
    for (const auto& g : report.by_bug_count) out += row(g);
    if (!report.by_kind.empty()) {
        out += "\nby bug kind\n" + header;
        for (const auto& g : report.by_kind) out += row(g);
    }
    return out;
}

} // namespace socratic
