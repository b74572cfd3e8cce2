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

#include "socratic/service.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <httplib.h>

#include "socratic/datasets.hpp"
#include "socratic/serialize.hpp"

namespace socratic {

namespace fs = std::filesystem;

namespace {

ServiceResponse error(int status, const std::string& code, const std::string& message) {
    return {status, Json{{"error", code}, {"message", message}}};
}

Json node_json(const QuestionNode& n) {
    return Json{{"node_id", n.node_id}, {"level", n.level}, {"kind", to_string(n.kind)}, {"text", n.text}};
}

Json parse_body(const std::string& body) {
    if (body.empty()) return Json::object();
    return Json::parse(body);
}

} // namespace

ServiceConfig ServiceConfig::from_json(const Json& j, const ServiceConfig& defaults) {
    ServiceConfig base = defaults;
    if (!j.is_object()) throw ConfigError("service config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "host") base.host = value.get<std::string>();
            else if (key == "port") base.port = value.get<int>();
            else if (key == "store_dir") base.store_dir = value.get<std::string>();
            else if (key == "debug_token") base.debug_token = value.get<std::string>();
            else if (key == "static_dir") base.static_dir = value.get<std::string>();
            else if (key == "dataset") base.problems = load_problem_set(value.get<std::string>()).problems;
            else if (key == "session") base.session_defaults = config_from_json(value, base.session_defaults);
            else throw ConfigError("unknown service config key '" + key + "'");
        } catch (const Json::exception& e) {
            throw ConfigError("service config '" + key + "': " + e.what());
        }
    }
    return base;
}

void ServiceConfig::apply_env() {
    if (const char* v = std::getenv("SOCRATIC_PORT")) port = std::atoi(v);
    if (const char* v = std::getenv("SOCRATIC_STORE_DIR")) store_dir = v;
    if (const char* v = std::getenv("SOCRATIC_DEBUG_TOKEN")) debug_token = v;
}

// ---- store ----------------------------------------------------------------

SessionStore::SessionStore(std::string dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

std::string SessionStore::path_for(const std::string& session_id) const {
    return (fs::path(dir_) / (session_id + ".json")).string();
}

void SessionStore::save(const Transcript& transcript) const {
    auto path = path_for(transcript.header.session_id);
    auto tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + tmp + "'");
        out << transcript_to_string(transcript);
        out.flush();
        if (!out) throw ConfigError("short write to '" + tmp + "'");
    }
    fs::rename(tmp, path);
}

std::vector<Transcript> SessionStore::load_all(std::vector<std::string>* errors) const {
    std::vector<Transcript> out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir_)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        try {
            out.push_back(transcript_from_string(buf.str()));
        } catch (const Error& e) {
            if (errors) errors->push_back(path.string() + ": " + e.what());
        }
    }
    return out;
}

// ---- views ----------------------------------------------------------------

Json action_json(const InstructorAction& action) {
    Json j{{"kind", to_string(action.kind)}, {"text", action.text}};
    if (action.node) j["node"] = node_json(*action.node);
    if (action.reason) j["reason"] = to_string(*action.reason);
    return j;
}

Json student_event_json(const SessionEvent& event) {
    Json payload = std::visit(
        [](const auto& e) -> Json {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, StateEstimated>) {
                return Json{{"task_count", e.tasks.size()}};
            } else if constexpr (std::is_same_v<T, QuestionAsked> || std::is_same_v<T, TeachingDelivered>) {
                return node_json(e.node);
            } else if constexpr (std::is_same_v<T, ResponseReceived>) {
                return Json{{"text", e.text}};
            } else if constexpr (std::is_same_v<T, ResponseVerified>) {
                return Json{{"correct", e.correct}};
            } else if constexpr (std::is_same_v<T, BugFixesCollected>) {
                return Json{{"fixes", e.fixes.fixes}};
            } else if constexpr (std::is_same_v<T, ResolutionChecked>) {
                return Json{{"all_covered", e.verdict.all_covered}};
            } else if constexpr (std::is_same_v<T, Terminated>) {
                return Json{{"reason", to_string(e.reason)}};
            } else {
                return Json::object();
            }
        },
        event.payload);
    return Json{{"sequence", event.sequence},
                {"timestamp", event.timestamp},
                {"type", event_type_name(event.payload)},
                {"payload", payload}};
}

Json student_session_json(const SessionState& s) {
    Json conversation = Json::array();
    for (const auto& turn : s.history) {
        conversation.push_back({{"question", node_json(turn.question)}, {"student_response", turn.student_response}});
    }
    return Json{{"session_id", s.session_id},
                {"problem",
                 {{"id", s.problem.id},
                  {"problem_statement", s.problem.problem_statement},
                  {"buggy_code", s.problem.buggy_code},
                  {"num_bugs", s.problem.num_bugs}}},
                {"status", to_string(s.status)},
                {"termination_reason", s.termination_reason ? Json(to_string(*s.termination_reason)) : Json(nullptr)},
                {"total_turns", s.total_turns},
                {"turn_cap", s.turn_cap()},
                {"conversation", conversation},
                {"collected_fixes", s.collected_fixes.fixes},
                {"next", action_json(Tutor::current_action(s))},
                {"event_count", s.events.size()}};
}

// ---- service --------------------------------------------------------------

SessionService::SessionService(Tutor& tutor, ServiceConfig config)
    : tutor_(tutor), config_(std::move(config)), store_(config_.store_dir) {}

SessionService::~SessionService() = default;

std::string SessionService::new_session_id() {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    std::ostringstream out;
    out << "s-" << std::hex << rng();
    return out.str();
}

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

void SessionService::persist(const SessionState& state) const {
    store_.save(make_transcript(state, tutor_.agents().catalog().hash(), tutor_.agents().gateway().provider_id()));
}

std::optional<SessionState> SessionService::snapshot(const std::string& id) {
    auto entry = find(id);
    if (!entry) return std::nullopt;
    std::lock_guard lock(entry->busy);
    return entry->state;
}

ServiceResponse SessionService::create_session(const Json& body) {
    if (!body.is_object()) return error(422, "invalid_request", "body must be a JSON object");
    ProblemBundle problem;
    SessionConfig config = config_.session_defaults;
    try {
        if (auto it = body.find("problem"); it != body.end()) {
            problem = problem_from_json(*it, "problem");
            validate_problem(problem);
        } else if (auto pid = body.find("problem_id"); pid != body.end() && pid->is_string()) {
            auto match = std::find_if(config_.problems.begin(), config_.problems.end(),
                                      [&](const ProblemBundle& p) { return p.id == pid->get<std::string>(); });
            if (match == config_.problems.end()) {
                return error(404, "unknown_problem", "no problem with id '" + pid->get<std::string>() + "'");
            }
            problem = *match;
        } else {
            return error(422, "invalid_request", "provide problem_id or an inline problem");
        }
        if (auto it = body.find("config"); it != body.end()) config = config_from_json(*it, config);
    } catch (const SchemaError& e) {
        return error(422, "invalid_problem", e.what());
    } catch (const InvalidProblemError& e) {
        return error(422, "invalid_problem", e.what());
    } catch (const ConfigError& e) {
        return error(422, "invalid_config", e.what());
    }

    StepResult started;
    try {
        started = tutor_.start_session(new_session_id(), problem, config);
    } catch (const GatewayError& e) {
        return error(502, "provider_failure", e.what());
    } catch (const SessionSetupError& e) {
        return error(502, "session_setup_failed", e.what());
    } catch (const ConfigError& e) {
        return error(422, "invalid_config", e.what());
    }
    persist(started.state);
    auto entry = std::make_shared<Entry>();
    entry->state = started.state;
    {
        std::lock_guard lock(sessions_mutex_);
        sessions_[started.state.session_id] = entry;
    }
    return {201, Json{{"session_id", started.state.session_id},
                      {"status", to_string(started.state.status)},
                      {"action", action_json(started.action)}}};
}

ServiceResponse SessionService::post_message(const std::string& id, const Json& body) {
    auto entry = find(id);
    if (!entry) return error(404, "unknown_session", "no session '" + id + "'");
    std::unique_lock lock(entry->busy, std::try_to_lock);
    if (!lock.owns_lock()) return error(409, "busy", "a previous message for this session is still being processed");
    const auto& s = entry->state;
    if (s.status == SessionStatus::terminated) return error(410, "terminated", "session has terminated");
    if (s.status == SessionStatus::awaiting_bug_fixes) {
        return error(409, "awaiting_bug_fixes", "submit bug fixes to /sessions/" + id + "/bugfixes");
    }
    auto text = body.is_object() ? body.value("text", std::string{}) : std::string{};
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        return error(422, "invalid_request", "text must be a non-empty string");
    }
    try {
        auto result = tutor_.step(s, text);
        persist(result.state);
        entry->state = std::move(result.state);
        return {200, Json{{"status", to_string(entry->state.status)},
                          {"total_turns", entry->state.total_turns},
                          {"action", action_json(result.action)}}};
    } catch (const GatewayError& e) {
        return error(502, "provider_failure", e.what());
    }
}

ServiceResponse SessionService::post_bugfixes(const std::string& id, const Json& body) {
    auto entry = find(id);
    if (!entry) return error(404, "unknown_session", "no session '" + id + "'");
    std::unique_lock lock(entry->busy, std::try_to_lock);
    if (!lock.owns_lock()) return error(409, "busy", "a previous message for this session is still being processed");
    const auto& s = entry->state;
    if (s.status == SessionStatus::terminated) return error(410, "terminated", "session has terminated");
    if (s.status != SessionStatus::awaiting_bug_fixes) {
        return error(409, "not_awaiting_bug_fixes", "the tutor is waiting for an answer to its question");
    }
    try {
        StepResult result;
        if (body.is_object() && body.contains("fixes")) {
            auto fixes = body.at("fixes").get<std::vector<std::string>>();
            result = tutor_.submit_bug_fixes(s, BugFixList::from(fixes), body.at("fixes").dump());
        } else if (body.is_object() && body.contains("reply")) {
            result = tutor_.submit_bug_fix_reply(s, body.at("reply").get<std::string>());
        } else {
            return error(422, "invalid_request", "provide fixes (list of strings) or reply (text)");
        }
        persist(result.state);
        entry->state = std::move(result.state);
        return {200, Json{{"status", to_string(entry->state.status)},
                          {"total_turns", entry->state.total_turns},
                          {"action", action_json(result.action)}}};
    } catch (const Json::exception& e) {
        return error(422, "invalid_request", e.what());
    } catch (const GatewayError& e) {
        return error(502, "provider_failure", e.what());
    }
}

ServiceResponse SessionService::get_session(const std::string& id) {
    auto state = snapshot(id);
    if (!state) return error(404, "unknown_session", "no session '" + id + "'");
    return {200, student_session_json(*state)};
}

ServiceResponse SessionService::get_events(const std::string& id, const std::string& cursor,
                                           const std::string& limit) {
    auto state = snapshot(id);
    if (!state) return error(404, "unknown_session", "no session '" + id + "'");
    long long after = 0;
    long long page = 50;
    try {
        if (!cursor.empty()) after = std::stoll(cursor);
        if (!limit.empty()) page = std::stoll(limit);
    } catch (const std::exception&) {
        return error(422, "invalid_request", "cursor and limit must be integers");
    }
    if (after < 0 || page < 1 || page > 1000) return error(422, "invalid_request", "cursor >= 0, 1 <= limit <= 1000");
    Json events = Json::array();
    long long next = after;
    const auto total = static_cast<long long>(state->events.size());
    for (long long i = after; i < total && static_cast<long long>(events.size()) < page; ++i) {
        events.push_back(student_event_json(state->events[static_cast<std::size_t>(i)]));
        next = i + 1;
    }
    return {200, Json{{"events", events}, {"next_cursor", next}, {"has_more", next < total}}};
}

ServiceResponse SessionService::get_debug(const std::string& id, const std::string& token) {
    if (config_.debug_token.empty() || token != config_.debug_token) {
        return error(403, "forbidden", "a valid X-Debug-Token header is required");
    }
    auto state = snapshot(id);
    if (!state) return error(404, "unknown_session", "no session '" + id + "'");
    Json j = state_snapshot_json(*state);
    j["events"] = state->events;
    return {200, j};
}

ServiceResponse SessionService::list_problems() const {
    Json out = Json::array();
    for (const auto& p : config_.problems) {
        out.push_back({{"id", p.id}, {"num_bugs", p.num_bugs}, {"problem_statement", p.problem_statement}});
    }
    return {200, Json{{"problems", out}}};
}

std::size_t SessionService::restore() {
    std::vector<std::string> errors;
    std::size_t restored = 0;
    for (const auto& t : store_.load_all(&errors)) {
        try {
            auto state = resume(t);
            if (state.status == SessionStatus::terminated) continue;
            auto entry = std::make_shared<Entry>();
            entry->state = std::move(state);
            std::lock_guard lock(sessions_mutex_);
            sessions_[t.header.session_id] = entry;
            ++restored;
        } catch (const Error& e) {
            errors.push_back(t.header.session_id + ": " + e.what());
        }
    }
    for (const auto& e : errors) std::cerr << "skipping stored session " << e << "\n";
    return restored;
}

int SessionService::bind() {
    server_ = std::make_unique<httplib::Server>();
    auto& srv = *server_;
    auto reply = [](httplib::Response& res, const ServiceResponse& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    auto with_body = [reply](httplib::Response& res, const std::string& body, auto handler) {
        Json j;
        try {
            j = parse_body(body);
        } catch (const Json::exception& e) {
            reply(res, error(400, "invalid_json", e.what()));
            return;
        }
        reply(res, handler(j));
    };

    srv.Post("/sessions", [this, with_body](const httplib::Request& req, httplib::Response& res) {
        with_body(res, req.body, [this](const Json& j) { return create_session(j); });
    });
    srv.Post(R"(/sessions/([A-Za-z0-9_-]+)/messages)",
             [this, with_body](const httplib::Request& req, httplib::Response& res) {
                 auto id = req.matches[1].str();
                 with_body(res, req.body, [this, &id](const Json& j) { return post_message(id, j); });
             });
    srv.Post(R"(/sessions/([A-Za-z0-9_-]+)/bugfixes)",
             [this, with_body](const httplib::Request& req, httplib::Response& res) {
                 auto id = req.matches[1].str();
                 with_body(res, req.body, [this, &id](const Json& j) { return post_bugfixes(id, j); });
             });
    srv.Get(R"(/sessions/([A-Za-z0-9_-]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, get_session(req.matches[1].str()));
    });
    srv.Get(R"(/sessions/([A-Za-z0-9_-]+)/events)",
            [this, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, get_events(req.matches[1].str(), req.get_param_value("cursor"),
                                      req.get_param_value("limit")));
            });
    srv.Get(R"(/sessions/([A-Za-z0-9_-]+)/debug)",
            [this, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, get_debug(req.matches[1].str(), req.get_header_value("X-Debug-Token")));
            });
    srv.Get("/problems",
            [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, list_problems()); });
    if (!config_.static_dir.empty() && !srv.set_mount_point("/", config_.static_dir)) {
        throw ConfigError("static directory '" + config_.static_dir + "' does not exist");
    }

    int port = config_.port;
    if (port == 0) {
        port = srv.bind_to_any_port(config_.host);
    } else if (!srv.bind_to_port(config_.host, port)) {
        port = -1;
    }
    if (port < 0) throw ConfigError("cannot bind " + config_.host + ":" + std::to_string(config_.port));
    return port;
}

void SessionService::listen() {
    if (!server_) bind();
    server_->listen_after_bind();
}

void SessionService::stop() {
    if (server_) server_->stop();
}

} // namespace socratic
