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

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "socratic/model.hpp"
#include "socratic/orchestrator.hpp"

namespace httplib {
class Server;
}

namespace socratic {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string store_dir = "sessions";
    // Empty disables the debug endpoint (always 403).
    std::string debug_token;
    // Served at / when set (the browser client's build output).
    std::string static_dir;
    std::vector<ProblemBundle> problems;
    SessionConfig session_defaults;

    // Keys: host, port, store_dir, debug_token, static_dir, dataset, session.
    // Env SOCRATIC_PORT, SOCRATIC_STORE_DIR, SOCRATIC_DEBUG_TOKEN override.
    static ServiceConfig from_json(const Json& j, const ServiceConfig& base);
    void apply_env();
};

// One JSON file per session, replaced atomically (write + rename).
class SessionStore {
public:
    explicit SessionStore(std::string dir);
    void save(const Transcript& transcript) const;
    // Every readable transcript; unreadable files are reported and skipped.
    std::vector<Transcript> load_all(std::vector<std::string>* errors = nullptr) const;
    std::string path_for(const std::string& session_id) const;
    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
};

struct ServiceResponse {
    int status = 200;
    Json body;
};

Json action_json(const InstructorAction& action);
// What a student may see of an event: no task texts, verdict explanations,
// model answers beyond the delivered text, or ground-truth fixes.
Json student_event_json(const SessionEvent& event);
Json student_session_json(const SessionState& state);

// Live tutoring sessions. The handler methods are transport-free so tests can
// call them directly; serve() binds them to HTTP routes.
class SessionService {
public:
    SessionService(Tutor& tutor, ServiceConfig config);
    ~SessionService();

    ServiceResponse create_session(const Json& body);
    ServiceResponse post_message(const std::string& id, const Json& body);
    ServiceResponse post_bugfixes(const std::string& id, const Json& body);
    ServiceResponse get_session(const std::string& id);
    ServiceResponse get_events(const std::string& id, const std::string& cursor, const std::string& limit);
    ServiceResponse get_debug(const std::string& id, const std::string& token);
    ServiceResponse list_problems() const;

    // Loads every stored, non-terminated session. Returns how many.
    std::size_t restore();
    std::optional<SessionState> snapshot(const std::string& id);

    // Binds (port 0 picks a free one) and returns the bound port.
    int bind();
    // Blocks until stop().
    void listen();
    void stop();

private:
    struct Entry {
        std::mutex busy;
        SessionState state;
    };
    std::shared_ptr<Entry> find(const std::string& id);
    void persist(const SessionState& state) const;
    std::string new_session_id();

    Tutor& tutor_;
    ServiceConfig config_;
    SessionStore store_;
    std::mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::unique_ptr<httplib::Server> server_;
};

} // namespace socratic
