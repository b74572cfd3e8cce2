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

#include "socratic/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>

#include "socratic/serialize.hpp"
#include "socratic/text.hpp"

namespace socratic {

namespace {

std::string iso_utc(std::time_t t) {
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int node_count(const SessionState& s) {
    return static_cast<int>(std::count_if(s.events.begin(), s.events.end(), [](const SessionEvent& e) {
        return std::holds_alternative<QuestionAsked>(e.payload) ||
               std::holds_alternative<TeachingDelivered>(e.payload);
    }));
}

std::string cap_summary(const SessionState& s) {
    std::string out = "We have reached the limit of " + std::to_string(s.turn_cap()) +
                      " turns for this exercise, so the session ends here.";
    auto open = s.state_space.unresolved_indices();
    if (!open.empty()) {
        out += " Still unresolved:";
        for (int idx : open) out += "\n" + std::to_string(idx) + ". " + s.state_space.at(idx).task;
    }
    return out;
}

} // namespace

std::string to_string(ActionKind kind) {
    switch (kind) {
    case ActionKind::question: return "question";
    case ActionKind::teach: return "teach";
    case ActionKind::bug_fix_request: return "bug_fix_request";
    case ActionKind::terminated: return "terminated";
    }
    return "question";
}

Clock logical_clock() {
    return [](std::int64_t sequence) {
        constexpr std::time_t kEpoch = 1767225600;  // 2026-01-01T00:00:00Z
        return iso_utc(kEpoch + static_cast<std::time_t>(sequence));
    };
}

Clock system_clock() {
    return [](std::int64_t) { return iso_utc(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now())); };
}

Tutor::Tutor(Agents& agents, Clock clock) : agents_(agents), clock_(std::move(clock)) {}

void Tutor::emit(SessionState& s, EventPayload payload) {
    auto seq = static_cast<std::int64_t>(s.events.size()) + 1;
    apply_event(s, SessionEvent{seq, clock_(seq), std::move(payload)});
}

InstructorAction Tutor::ask(SessionState& s, const QuestionNode& node) {
    QuestionNode n = node;
    n.node_id = "n" + std::to_string(node_count(s) + 1);
    emit(s, QuestionAsked{n});
    return {ActionKind::question, n.text, n, std::nullopt};
}

InstructorAction Tutor::teach(SessionState& s, const std::string& misunderstanding) {
    auto level = s.tree.current_questions();
    auto answer = agents_.model_answer(s.problem, level.front(), misunderstanding, s.history);
    auto node = Agents::compose_teaching_message(level, answer);
    node.node_id = "n" + std::to_string(node_count(s) + 1);
    emit(s, TeachingDelivered{node, answer});
    return {ActionKind::teach, node.text, node, std::nullopt};
}

InstructorAction Tutor::terminate(SessionState& s, TerminationReason reason) {
    Terminated t{reason, {}};
    if (reason == TerminationReason::turn_cap_reached) t.summary = cap_summary(s);
    emit(s, t);
    return current_action(s);
}

InstructorAction Tutor::current_action(const SessionState& s) {
    if (s.status == SessionStatus::terminated) {
        InstructorAction a{ActionKind::terminated, {}, std::nullopt, s.termination_reason};
        switch (*s.termination_reason) {
        case TerminationReason::all_fixes_isomorphic:
            a.text = "Your bug fixes cover every bug in the program. Well done!";
            break;
        case TerminationReason::all_tasks_resolved:
            a.text = "You have worked through every step of this exercise. Well done!";
            break;
        case TerminationReason::turn_cap_reached:
            a.text = "We have reached the turn limit for this exercise, so the session ends here.";
            break;
        }
        return a;
    }
    if (s.status == SessionStatus::awaiting_bug_fixes) {
        return {ActionKind::bug_fix_request, kBugFixRequest, std::nullopt, std::nullopt};
    }
    if (!s.pending_question) throw InvalidStateError("session has no pending question");
    auto kind = s.pending_question->kind == NodeKind::teach ? ActionKind::teach : ActionKind::question;
    return {kind, s.pending_question->text, s.pending_question, std::nullopt};
}

StepResult Tutor::start_session(std::string session_id, const ProblemBundle& problem, const SessionConfig& config) {
    validate_problem(problem);
    if (config.teach_after < 1 || config.max_depth < 1 || config.max_width < 1 || config.max_turns_per_bug < 1) {
        throw ConfigError("teach_after, max_depth, max_width and max_turns_per_bug must be positive");
    }
    SessionState s = initial_session(std::move(session_id), problem, config);
    if (config.no_state) {
        emit(s, StateEstimated{{Agents::kNoStateTask}, true});
    } else {
        auto space = agents_.generate_state(problem);
        std::vector<std::string> tasks;
        for (const auto& v : space.variables) tasks.push_back(v.task);
        emit(s, StateEstimated{tasks, false});
    }
    auto target = *target_variable(s.state_space);
    auto action = ask(s, agents_.generate_initial_question(problem, target));
    return {std::move(s), std::move(action)};
}

StepResult Tutor::step(const SessionState& session, const std::string& student_response) {
    if (session.status == SessionStatus::terminated) throw InvalidStateError("session has terminated");
    if (session.status != SessionStatus::awaiting_response || !session.pending_question) {
        throw InvalidStateError("session is waiting for bug fixes, not a response");
    }
    if (text::trim(student_response).empty()) throw InvalidStateError("empty student response");

    SessionState s = session;
    const QuestionNode question = *s.pending_question;
    emit(s, ResponseReceived{student_response});

    auto verdict = agents_.verify_response(s.problem, question, student_response);
    emit(s, ResponseVerified{verdict, verdict.correct()});

    const int target = s.tree.target_variable_index;
    if (verdict.correct()) {
        std::vector<int> first;
        if (s.config.sweep_mode == SweepMode::always) {
            for (int idx : s.state_space.unresolved_indices()) {
                if (idx >= target) first.push_back(idx);
            }
        } else {
            first.push_back(target);
        }
        auto history_before = std::vector<Turn>(s.history.begin(), s.history.end() - 1);
        auto result = agents_.update_understanding(s.problem, s.state_space, first, question, student_response,
                                                   history_before);
        emit(s, UnderstandingUpdated{result.checked, result.demonstrated, result.explanation});
        auto demonstrated = result.demonstrated;

        // A resolved target may have taken dependent tasks with it.
        if (s.config.sweep_mode == SweepMode::on_resolve && result.state_space.is_resolved(target)) {
            std::vector<int> rest;
            for (int idx : result.state_space.unresolved_indices()) {
                if (idx > target) rest.push_back(idx);
            }
            if (!rest.empty()) {
                auto sweep = agents_.update_understanding(s.problem, result.state_space, rest, question,
                                                          student_response, history_before);
                // Keep the target's gap explanation (empty: it is resolved).
                emit(s, UnderstandingUpdated{sweep.checked, sweep.demonstrated, {}});
                demonstrated.insert(demonstrated.end(), sweep.demonstrated.begin(), sweep.demonstrated.end());
            }
        }
        std::sort(demonstrated.begin(), demonstrated.end());
        for (int idx : demonstrated) emit(s, TaskResolved{idx});
    }

    if (s.total_turns >= s.turn_cap()) {
        auto action = terminate(s, TerminationReason::turn_cap_reached);
        return {std::move(s), std::move(action)};
    }

    const auto target_var = s.state_space.at(target);
    const auto level = s.tree.current_questions();
    InstructorAction action;
    if (!verdict.correct()) {
        bool teach_now = !s.config.no_teaching && (s.consecutive_incorrect >= s.config.teach_after ||
                                                   s.tree.width(s.tree.current_level) >= s.config.max_width);
        if (teach_now) {
            action = teach(s, s.level_misunderstandings.empty() ? std::string{} : s.level_misunderstandings.back());
        } else {
            action = ask(s, agents_.generate_sibling_question(s.problem, target_var, level, s.history,
                                                              s.level_misunderstandings));
        }
    } else if (target_var.resolved) {
        action = current_action(s);  // status is awaiting_bug_fixes
    } else if (s.tree.current_level + 1 >= s.config.max_depth) {
        if (s.config.no_teaching) {
            action = ask(s, agents_.generate_sibling_question(s.problem, target_var, level, s.history,
                                                              s.level_misunderstandings));
        } else {
            action = teach(s, s.gap_explanation);
        }
    } else {
        action = ask(s, agents_.generate_child_question(s.problem, target_var, level, s.history, s.gap_explanation));
    }
    return {std::move(s), std::move(action)};
}

InstructorAction Tutor::ask_new_tree_or_finish(SessionState& s) {
    auto next = target_variable(s.state_space);
    if (!next) return terminate(s, TerminationReason::all_tasks_resolved);
    emit(s, NewTreeStarted{next->index});
    return ask(s, agents_.generate_initial_question(s.problem, *next));
}

StepResult Tutor::submit_bug_fixes(const SessionState& session, const BugFixList& fixes, const std::string& raw_reply,
                                   bool parse_failed) {
    if (session.status == SessionStatus::terminated) throw InvalidStateError("session has terminated");
    if (session.status != SessionStatus::awaiting_bug_fixes) {
        throw InvalidStateError("session is waiting for a response, not bug fixes");
    }
    SessionState s = session;
    auto clean = BugFixList::from(fixes.fixes);
    const bool unchanged = s.last_resolution && clean == s.collected_fixes;
    emit(s, BugFixesCollected{clean, raw_reply, parse_failed});
    if (unchanged) {
        emit(s, ResolutionChecked{*s.last_resolution, true});
    } else {
        emit(s, ResolutionChecked{agents_.check_resolution(s.problem, clean), false});
    }

    InstructorAction action;
    if (s.last_resolution->all_covered) {
        action = terminate(s, TerminationReason::all_fixes_isomorphic);
    } else {
        action = ask_new_tree_or_finish(s);
    }
    return {std::move(s), std::move(action)};
}

StepResult Tutor::submit_bug_fix_reply(const SessionState& session, const std::string& reply) {
    auto collected = Agents::collect_bug_fixes(reply);
    return submit_bug_fixes(session, collected.fixes, collected.raw_reply, collected.parse_failed);
}

// ---- student drivers ------------------------------------------------------

ScriptedStudent ScriptedStudent::from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("student script must be a JSON object");
    ScriptedStudent s;
    try {
        if (auto it = j.find("responses"); it != j.end()) {
            if (it->is_array()) {
                for (std::size_t i = 0; i < it->size(); ++i) {
                    s.by_ordinal_[static_cast<int>(i) + 1] = (*it)[i].get<std::string>();
                }
            } else {
                for (const auto& [key, value] : it->items()) s.by_ordinal_[std::stoi(key)] = value.get<std::string>();
            }
        }
        for (const auto& p : j.value("patterns", Json::array())) {
            s.patterns_.emplace_back(std::regex(p.at("match").get<std::string>(), std::regex::icase),
                                     p.at("response").get<std::string>());
        }
        s.bug_fixes_ = j.value("bug_fixes", std::vector<std::string>{});
        s.default_ = j.value("default", s.default_);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("student script: ") + e.what());
    }
    return s;
}

ScriptedStudent ScriptedStudent::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open student script '" + path + "'");
    try {
        return from_json(Json::parse(in));
    } catch (const Json::exception& e) {
        throw ConfigError("student script '" + path + "': " + e.what());
    }
}

std::string ScriptedStudent::respond(const SessionState& session, const InstructorAction& action) {
    const int ordinal = static_cast<int>(session.history.size()) + 1;
    if (auto it = by_ordinal_.find(ordinal); it != by_ordinal_.end()) return it->second;
    for (const auto& [re, response] : patterns_) {
        if (std::regex_search(action.text, re)) return response;
    }
    return default_;
}

std::string ScriptedStudent::bug_fix_reply(const SessionState& session) {
    if (bug_fixes_.empty()) return "None";
    auto asked = std::count_if(session.events.begin(), session.events.end(), [](const SessionEvent& e) {
        return std::holds_alternative<BugFixesCollected>(e.payload);
    });
    return bug_fixes_[std::min<std::size_t>(static_cast<std::size_t>(asked), bug_fixes_.size() - 1)];
}

std::string SimulatedStudent::respond(const SessionState& session, const InstructorAction& action) {
    return agents_.simulated_student_respond(session.problem, action.text, session.history);
}

std::string SimulatedStudent::bug_fix_reply(const SessionState& session) {
    return agents_.simulated_bug_fix_reply(session.problem, session.history);
}

// ---- transcripts ----------------------------------------------------------

TranscriptHeader make_header(const SessionState& session, const std::string& catalog_hash,
                             const std::string& provider_id) {
    return {session.session_id, session.problem.id, session.problem, session.config, catalog_hash, provider_id};
}

Transcript make_transcript(const SessionState& session, const std::string& catalog_hash,
                           const std::string& provider_id) {
    Transcript t;
    t.header = make_header(session, catalog_hash, provider_id);
    t.events = session.events;
    t.final_state = session;
    return t;
}

Transcript continue_session(Tutor& tutor, SessionState session, StudentDriver& student) {
    const auto hash = tutor.agents().catalog().hash();
    const auto provider = tutor.agents().gateway().provider_id();
    try {
        while (session.status != SessionStatus::terminated) {
            if (session.status == SessionStatus::awaiting_bug_fixes) {
                session = tutor.submit_bug_fix_reply(session, student.bug_fix_reply(session)).state;
            } else {
                auto reply = student.respond(session, Tutor::current_action(session));
                session = tutor.step(session, reply).state;
            }
        }
    } catch (const Error& e) {
        throw SessionAborted(e.what(), make_transcript(session, hash, provider));
    }
    return make_transcript(session, hash, provider);
}

Transcript run_to_completion(Tutor& tutor, const ProblemBundle& problem, StudentDriver& student,
                             const SessionConfig& config, const std::string& session_id) {
    SessionState session;
    try {
        session = tutor.start_session(session_id, problem, config).state;
    } catch (const GatewayError& e) {
        Transcript partial;
        partial.header = make_header(initial_session(session_id, problem, config), tutor.agents().catalog().hash(),
                                     tutor.agents().gateway().provider_id());
        throw SessionAborted(e.what(), partial);
    }
    return continue_session(tutor, std::move(session), student);
}

SessionState resume(const Transcript& transcript) { return replay(transcript); }

} // namespace socratic
