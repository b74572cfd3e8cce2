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

#include "socratic/serialize.hpp"

#include <array>
#include <utility>

#include "socratic/errors.hpp"

namespace socratic {

namespace {

template <typename E, std::size_t N>
using EnumNames = std::array<std::pair<E, const char*>, N>;

constexpr EnumNames<NodeKind, 4> kNodeKinds{{{NodeKind::initial, "initial"},
                                             {NodeKind::sibling, "sibling"},
                                             {NodeKind::child, "child"},
                                             {NodeKind::teach, "teach"}}};
constexpr EnumNames<SessionStatus, 3> kStatuses{{{SessionStatus::awaiting_response, "awaiting_response"},
                                                 {SessionStatus::awaiting_bug_fixes, "awaiting_bug_fixes"},
                                                 {SessionStatus::terminated, "terminated"}}};
constexpr EnumNames<TerminationReason, 3> kReasons{
    {{TerminationReason::all_fixes_isomorphic, "all_fixes_isomorphic"},
     {TerminationReason::all_tasks_resolved, "all_tasks_resolved"},
     {TerminationReason::turn_cap_reached, "turn_cap_reached"}}};
constexpr EnumNames<BugKind, 2> kBugKinds{{{BugKind::syntactical, "syntactical"},
                                           {BugKind::conceptual, "conceptual"}}};
constexpr EnumNames<SweepMode, 2> kSweepModes{{{SweepMode::on_resolve, "on_resolve"},
                                               {SweepMode::always, "always"}}};

template <typename E, std::size_t N>
std::string enum_name(const EnumNames<E, N>& names, E value) {
    for (const auto& [v, name] : names) {
        if (v == value) return name;
    }
    return "unknown";
}

template <typename E, std::size_t N>
E enum_value(const EnumNames<E, N>& names, const std::string& name, const char* what) {
    for (const auto& [v, n] : names) {
        if (name == n) return v;
    }
    throw SchemaError({}, std::string("unknown ") + what + " '" + name + "'");
}

template <typename T>
void put_optional(Json& j, const char* key, const std::optional<T>& v) {
    if (v) {
        j[key] = *v;
    } else {
        j[key] = nullptr;
    }
}

std::string require_string(const Json& j, const char* key, const std::string& path, bool non_empty) {
    auto field_path = path.empty() ? std::string(key) : path + "." + key;
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(field_path, "missing required field");
    if (!it->is_string()) throw SchemaError(field_path, "expected a string");
    auto value = it->get<std::string>();
    if (non_empty && value.empty()) throw SchemaError(field_path, "must not be empty");
    return value;
}

} // namespace

std::string to_string(NodeKind kind) { return enum_name(kNodeKinds, kind); }
std::string to_string(SessionStatus status) { return enum_name(kStatuses, status); }
std::string to_string(TerminationReason reason) { return enum_name(kReasons, reason); }
std::string to_string(BugKind kind) { return enum_name(kBugKinds, kind); }

void to_json(Json& j, const BugRecord& v) {
    j = Json{{"description", v.description}, {"fix", v.fix}};
}

void to_json(Json& j, const ProblemBundle& v) {
    j = v.extra.is_object() ? v.extra : Json::object();
    j["id"] = v.id;
    if (!v.base_id.empty()) j["base_id"] = v.base_id;
    j["problem_statement"] = v.problem_statement;
    j["buggy_code"] = v.buggy_code;
    j["bugs"] = v.bugs;
    j["correct_code"] = v.correct_code;
    j["num_bugs"] = v.num_bugs;
    bool any_label = false;
    Json labels = Json::array();
    for (const auto& bug : v.bugs) {
        if (bug.kind) {
            any_label = true;
            labels.push_back(to_string(*bug.kind));
        } else {
            labels.push_back(nullptr);
        }
    }
    if (any_label) j["bug_kind_labels"] = labels;
}

ProblemBundle problem_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    ProblemBundle p;
    p.id = require_string(j, "id", path, true);
    p.problem_statement = require_string(j, "problem_statement", path, true);
    p.buggy_code = require_string(j, "buggy_code", path, true);
    p.correct_code = require_string(j, "correct_code", path, true);
    if (auto it = j.find("base_id"); it != j.end()) {
        if (!it->is_string()) throw SchemaError(path + ".base_id", "expected a string");
        p.base_id = it->get<std::string>();
    }
    auto bugs_path = path.empty() ? std::string("bugs") : path + ".bugs";
    auto bugs_it = j.find("bugs");
    if (bugs_it == j.end()) throw SchemaError(bugs_path, "missing required field");
    if (!bugs_it->is_array()) throw SchemaError(bugs_path, "expected an array");
    for (std::size_t i = 0; i < bugs_it->size(); ++i) {
        auto bug_path = bugs_path + "[" + std::to_string(i) + "]";
        const auto& b = (*bugs_it)[i];
        if (!b.is_object()) throw SchemaError(bug_path, "expected an object");
        BugRecord bug;
        bug.description = require_string(b, "description", bug_path, false);
        bug.fix = require_string(b, "fix", bug_path, false);
        if (auto k = b.find("bug_kind"); k != b.end() && !k->is_null()) {
            try {
                bug.kind = enum_value(kBugKinds, k->get<std::string>(), "bug kind");
            } catch (const std::exception& e) {
                throw SchemaError(bug_path + ".bug_kind", e.what());
            }
        }
        p.bugs.push_back(std::move(bug));
    }
    auto num_path = path.empty() ? std::string("num_bugs") : path + ".num_bugs";
    auto num_it = j.find("num_bugs");
    if (num_it == j.end()) throw SchemaError(num_path, "missing required field");
    if (!num_it->is_number_integer()) throw SchemaError(num_path, "expected an integer");
    p.num_bugs = num_it->get<int>();
    if (auto it = j.find("bug_kind_labels"); it != j.end() && !it->is_null()) {
        auto labels_path = path.empty() ? std::string("bug_kind_labels") : path + ".bug_kind_labels";
        if (!it->is_array() || it->size() != p.bugs.size()) {
            throw SchemaError(labels_path, "expected one label (or null) per bug");
        }
        for (std::size_t i = 0; i < p.bugs.size(); ++i) {
            const auto& label = (*it)[i];
            if (label.is_null()) continue;
            try {
                p.bugs[i].kind = enum_value(kBugKinds, label.get<std::string>(), "bug kind");
            } catch (const std::exception& e) {
                throw SchemaError(labels_path + "[" + std::to_string(i) + "]", e.what());
            }
        }
    }
    static const std::array<const char*, 8> known{"id",     "base_id",      "problem_statement", "buggy_code",
                                                  "bugs",   "correct_code", "num_bugs",          "bug_kind_labels"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) p.extra[key] = value;
    }
    return p;
}

void to_json(Json& j, const StateVariable& v) {
    j = Json{{"index", v.index}, {"task", v.task}, {"resolved", v.resolved}};
}
void from_json(const Json& j, StateVariable& v) {
    v.index = j.at("index").get<int>();
    v.task = j.at("task").get<std::string>();
    v.resolved = j.at("resolved").get<bool>();
}

void to_json(Json& j, const StateSpace& v) { j = Json{{"variables", v.variables}}; }
void from_json(const Json& j, StateSpace& v) { v.variables = j.at("variables").get<std::vector<StateVariable>>(); }

void to_json(Json& j, const QuestionNode& v) {
    j = Json{{"node_id", v.node_id},
             {"level", v.level},
             {"text", v.text},
             {"kind", to_string(v.kind)},
             {"target_variable_index", v.target_variable_index}};
    if (v.leak_flagged) j["leak_flagged"] = true;
}
void from_json(const Json& j, QuestionNode& v) {
    v.node_id = j.at("node_id").get<std::string>();
    v.level = j.at("level").get<int>();
    v.text = j.at("text").get<std::string>();
    v.kind = enum_value(kNodeKinds, j.at("kind").get<std::string>(), "node kind");
    v.target_variable_index = j.at("target_variable_index").get<int>();
    v.leak_flagged = j.value("leak_flagged", false);
}

void to_json(Json& j, const QuestionTree& v) {
    Json levels = Json::object();
    for (const auto& [level, nodes] : v.levels) levels[std::to_string(level)] = nodes;
    j = Json{{"target_variable_index", v.target_variable_index},
             {"levels", levels},
             {"current_level", v.current_level}};
}
void from_json(const Json& j, QuestionTree& v) {
    v.target_variable_index = j.at("target_variable_index").get<int>();
    v.current_level = j.at("current_level").get<int>();
    v.levels.clear();
    for (const auto& [key, nodes] : j.at("levels").items()) {
        v.levels[std::stoi(key)] = nodes.get<std::vector<QuestionNode>>();
    }
}

void to_json(Json& j, const Verdict& v) {
    j = Json{{"addresses_question", v.addresses_question},
             {"has_no_mistakes", v.has_no_mistakes},
             {"explanation", v.explanation}};
}
void from_json(const Json& j, Verdict& v) {
    v.addresses_question = j.at("addresses_question").get<bool>();
    v.has_no_mistakes = j.at("has_no_mistakes").get<bool>();
    v.explanation = j.at("explanation").get<std::string>();
}

void to_json(Json& j, const Turn& v) {
    j = Json{{"question", v.question}, {"student_response", v.student_response}};
    put_optional(j, "verdict", v.verdict);
}
void from_json(const Json& j, Turn& v) {
    v.question = j.at("question").get<QuestionNode>();
    v.student_response = j.at("student_response").get<std::string>();
    if (auto it = j.find("verdict"); it != j.end() && !it->is_null()) {
        v.verdict = it->get<Verdict>();
    } else {
        v.verdict.reset();
    }
}

void to_json(Json& j, const BugFixList& v) { j = Json{{"fixes", v.fixes}}; }
void from_json(const Json& j, BugFixList& v) { v.fixes = j.at("fixes").get<std::vector<std::string>>(); }

void to_json(Json& j, const FixMatch& v) {
    j = Json{{"truth_fix", v.truth_fix}, {"matched", v.matched}, {"explanation", v.explanation}};
}
void from_json(const Json& j, FixMatch& v) {
    v.truth_fix = j.at("truth_fix").get<std::string>();
    v.matched = j.at("matched").get<bool>();
    v.explanation = j.at("explanation").get<std::string>();
}

void to_json(Json& j, const IsomorphismVerdict& v) {
    j = Json{{"all_covered", v.all_covered}, {"per_truth_fix", v.per_truth_fix}};
}
void from_json(const Json& j, IsomorphismVerdict& v) {
    v.all_covered = j.at("all_covered").get<bool>();
    v.per_truth_fix = j.at("per_truth_fix").get<std::vector<FixMatch>>();
}

void to_json(Json& j, const SessionConfig& v) {
    j = Json{{"teach_after", v.teach_after},
             {"max_depth", v.max_depth},
             {"max_width", v.max_width},
             {"max_turns_per_bug", v.max_turns_per_bug},
             {"no_teaching", v.no_teaching},
             {"no_state", v.no_state},
             {"sweep_mode", enum_name(kSweepModes, v.sweep_mode)}};
}

SessionConfig config_from_json(const Json& j, SessionConfig base) {
    if (j.is_null()) return base;
    if (!j.is_object()) throw ConfigError("session config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "teach_after") {
                base.teach_after = value.get<int>();
            } else if (key == "max_depth") {
                base.max_depth = value.get<int>();
            } else if (key == "max_width") {
                base.max_width = value.get<int>();
            } else if (key == "max_turns_per_bug") {
                base.max_turns_per_bug = value.get<int>();
            } else if (key == "no_teaching") {
                base.no_teaching = value.get<bool>();
            } else if (key == "no_state") {
                base.no_state = value.get<bool>();
            } else if (key == "sweep_mode") {
                base.sweep_mode = enum_value(kSweepModes, value.get<std::string>(), "sweep mode");
            } else {
                throw ConfigError("unknown session config key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("session config key '" + key + "': " + e.what());
        }
    }
    if (base.teach_after < 1 || base.max_depth < 1 || base.max_width < 1 || base.max_turns_per_bug < 1) {
        throw ConfigError("teach_after, max_depth, max_width and max_turns_per_bug must be positive");
    }
    return base;
}

namespace {

struct PayloadWriter {
    Json& out;
    void operator()(const StateEstimated& e) { out = {{"tasks", e.tasks}, {"synthetic", e.synthetic}}; }
    void operator()(const QuestionAsked& e) { out = {{"node", e.node}}; }
    void operator()(const ResponseReceived& e) { out = {{"text", e.text}}; }
    void operator()(const ResponseVerified& e) { out = {{"verdict", e.verdict}, {"correct", e.correct}}; }
    void operator()(const UnderstandingUpdated& e) {
        out = {{"checked", e.checked}, {"demonstrated", e.demonstrated}, {"explanation", e.explanation}};
    }
    void operator()(const TaskResolved& e) { out = {{"index", e.index}}; }
    void operator()(const NewTreeStarted& e) { out = {{"target", e.target}}; }
    void operator()(const BugFixesCollected& e) {
        out = {{"fixes", e.fixes}, {"raw_reply", e.raw_reply}, {"parse_failed", e.parse_failed}};
    }
    void operator()(const ResolutionChecked& e) { out = {{"verdict", e.verdict}, {"reused", e.reused}}; }
    void operator()(const TeachingDelivered& e) { out = {{"node", e.node}, {"model_answer", e.model_answer}}; }
    void operator()(const Terminated& e) {
        out = {{"reason", to_string(e.reason)}};
        if (!e.summary.empty()) {
            out["summary"] = e.summary;
            out["non_canonical"] = true;
        }
    }
};

EventPayload payload_from_json(const std::string& type, const Json& p) {
    if (type == "StateEstimated") {
        return StateEstimated{p.at("tasks").get<std::vector<std::string>>(), p.value("synthetic", false)};
    }
    if (type == "QuestionAsked") return QuestionAsked{p.at("node").get<QuestionNode>()};
    if (type == "ResponseReceived") return ResponseReceived{p.at("text").get<std::string>()};
    if (type == "ResponseVerified") {
        return ResponseVerified{p.at("verdict").get<Verdict>(), p.at("correct").get<bool>()};
    }
    if (type == "UnderstandingUpdated") {
        return UnderstandingUpdated{p.at("checked").get<std::vector<int>>(),
                                    p.at("demonstrated").get<std::vector<int>>(),
                                    p.at("explanation").get<std::string>()};
    }
    if (type == "TaskResolved") return TaskResolved{p.at("index").get<int>()};
    if (type == "NewTreeStarted") return NewTreeStarted{p.at("target").get<int>()};
    if (type == "BugFixesCollected") {
        return BugFixesCollected{p.at("fixes").get<BugFixList>(), p.value("raw_reply", std::string{}),
                                 p.value("parse_failed", false)};
    }
    if (type == "ResolutionChecked") {
        return ResolutionChecked{p.at("verdict").get<IsomorphismVerdict>(), p.value("reused", false)};
    }
    if (type == "TeachingDelivered") {
        return TeachingDelivered{p.at("node").get<QuestionNode>(), p.value("model_answer", std::string{})};
    }
    if (type == "Terminated") {
        return Terminated{enum_value(kReasons, p.at("reason").get<std::string>(), "termination reason"),
                          p.value("summary", std::string{})};
    }
    throw SchemaError("type", "unknown event type '" + type + "'");
}

} // namespace

void to_json(Json& j, const SessionEvent& v) {
    Json payload;
    std::visit(PayloadWriter{payload}, v.payload);
    j = Json{{"sequence", v.sequence},
             {"timestamp", v.timestamp},
             {"type", event_type_name(v.payload)},
             {"payload", payload}};
}
void from_json(const Json& j, SessionEvent& v) {
    v.sequence = j.at("sequence").get<std::int64_t>();
    v.timestamp = j.at("timestamp").get<std::string>();
    v.payload = payload_from_json(j.at("type").get<std::string>(), j.at("payload"));
}

Json state_snapshot_json(const SessionState& v) {
    Json j{{"session_id", v.session_id},
           {"problem", v.problem},
           {"config", v.config},
           {"state_space", v.state_space},
           {"tree", v.tree},
           {"history", v.history},
           {"collected_fixes", v.collected_fixes},
           {"consecutive_incorrect", v.consecutive_incorrect},
           {"total_turns", v.total_turns},
           {"status", to_string(v.status)},
           {"level_misunderstandings", v.level_misunderstandings},
           {"gap_explanation", v.gap_explanation}};
    put_optional(j, "pending_question", v.pending_question);
    put_optional(j, "last_resolution", v.last_resolution);
    if (v.termination_reason) {
        j["termination_reason"] = to_string(*v.termination_reason);
    } else {
        j["termination_reason"] = nullptr;
    }
    return j;
}

void to_json(Json& j, const SessionState& v) {
    j = state_snapshot_json(v);
    j["events"] = v.events;
}

void from_json(const Json& j, SessionState& v) {
    v.session_id = j.at("session_id").get<std::string>();
    v.problem = problem_from_json(j.at("problem"), "problem");
    v.config = config_from_json(j.at("config"));
    v.state_space = j.at("state_space").get<StateSpace>();
    v.tree = j.at("tree").get<QuestionTree>();
    v.history = j.at("history").get<std::vector<Turn>>();
    v.collected_fixes = j.at("collected_fixes").get<BugFixList>();
    v.consecutive_incorrect = j.at("consecutive_incorrect").get<int>();
    v.total_turns = j.at("total_turns").get<int>();
    v.status = enum_value(kStatuses, j.at("status").get<std::string>(), "status");
    v.level_misunderstandings = j.at("level_misunderstandings").get<std::vector<std::string>>();
    v.gap_explanation = j.at("gap_explanation").get<std::string>();
    v.pending_question.reset();
    if (const auto& q = j.at("pending_question"); !q.is_null()) v.pending_question = q.get<QuestionNode>();
    v.last_resolution.reset();
    if (const auto& r = j.at("last_resolution"); !r.is_null()) v.last_resolution = r.get<IsomorphismVerdict>();
    v.termination_reason.reset();
    if (const auto& r = j.at("termination_reason"); !r.is_null()) {
        v.termination_reason = enum_value(kReasons, r.get<std::string>(), "termination reason");
    }
    v.events.clear();
    if (auto it = j.find("events"); it != j.end()) v.events = it->get<std::vector<SessionEvent>>();
}

void to_json(Json& j, const TranscriptHeader& v) {
    j = Json{{"session_id", v.session_id},
             {"problem_id", v.problem_id},
             {"problem", v.problem},
             {"config", v.config},
             {"template_catalog_hash", v.template_catalog_hash},
             {"provider_id", v.provider_id}};
}
void from_json(const Json& j, TranscriptHeader& v) {
    v.session_id = j.at("session_id").get<std::string>();
    v.problem_id = j.at("problem_id").get<std::string>();
    v.problem = problem_from_json(j.at("problem"), "header.problem");
    v.config = config_from_json(j.at("config"));
    v.template_catalog_hash = j.at("template_catalog_hash").get<std::string>();
    v.provider_id = j.at("provider_id").get<std::string>();
}

void to_json(Json& j, const Transcript& v) {
    j = Json{{"format", "socratic-transcript"},
             {"format_version", v.format_version},
             {"header", v.header},
             {"events", v.events}};
    if (v.final_state) {
        j["final_state"] = state_snapshot_json(*v.final_state);
    } else {
        j["final_state"] = nullptr;
    }
}

void from_json(const Json& j, Transcript& v) {
    if (j.value("format", std::string{}) != "socratic-transcript") {
        throw SchemaError("format", "not a transcript document");
    }
    v.format_version = j.at("format_version").get<int>();
    v.header = j.at("header").get<TranscriptHeader>();
    v.events = j.at("events").get<std::vector<SessionEvent>>();
    v.final_state.reset();
    if (auto it = j.find("final_state"); it != j.end() && !it->is_null()) {
        SessionState state = it->get<SessionState>();
        state.events = v.events;
        v.final_state = std::move(state);
    }
}

std::string transcript_to_string(const Transcript& transcript) {
    return Json(transcript).dump(2) + "\n";
}

Transcript transcript_from_string(std::string_view text) {
    try {
        return Json::parse(text).get<Transcript>();
    } catch (const CorruptTranscriptError&) {
        throw;
    } catch (const std::exception& e) {
        throw CorruptTranscriptError(std::string("malformed transcript: ") + e.what());
    }
}

} // namespace socratic
