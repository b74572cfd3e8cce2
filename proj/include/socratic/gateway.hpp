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

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "socratic/errors.hpp"
#include "socratic/model.hpp"

namespace socratic {

enum class TaskKind {
    state_estimation,
    question_generation,
    verification,
    understanding_update,
    bug_fix_collection,
    resolution_check,
    student_reply,
};

std::string to_string(TaskKind kind);
std::optional<TaskKind> task_kind_from_string(std::string_view name);
const std::vector<TaskKind>& all_task_kinds();

enum class Role { system, user, assistant };

struct ChatMessage {
    Role role = Role::user;
    std::string text;
};

struct GenerationParams {
    double temperature = 0.0;
    int max_output_tokens = 1024;
    std::chrono::milliseconds timeout{60'000};
    int retry_limit = 3;
};

struct ChatRequest {
    std::vector<ChatMessage> messages;
    TaskKind task_kind = TaskKind::verification;
    GenerationParams generation_params;

    // All message texts joined; what substring matchers look at.
    std::string flattened() const;
};

struct TokenUsage {
    int prompt_tokens = 0;
    int completion_tokens = 0;
};

struct ChatResponse {
    std::string text;
    TokenUsage usage;
    std::string provider_id;
};

enum class GatewayErrorKind {
    provider_unreachable,
    auth_failure,
    retry_exhausted,
    timeout,
    script_exhausted,
    bad_response,
    invalid_request,
};

std::string to_string(GatewayErrorKind kind);

class GatewayError : public Error {
public:
    GatewayError(GatewayErrorKind kind, const std::string& what)
        : Error(to_string(kind) + ": " + what), kind_(kind) {}

    GatewayErrorKind kind() const { return kind_; }
    // Worth retrying: unreachable provider or timeout.
    bool transient() const {
        return kind_ == GatewayErrorKind::provider_unreachable || kind_ == GatewayErrorKind::timeout;
    }

private:
    GatewayErrorKind kind_;
};

// One chat-completion backend. Implementations must be safe to call from
// several threads at once.
class Provider {
public:
    virtual ~Provider() = default;
    virtual ChatResponse send(const ChatRequest& request) = 0;
    virtual std::string id() const = 0;
};

struct GatewayConfig {
    std::map<TaskKind, double> temperatures{
        {TaskKind::state_estimation, 0.1},
        {TaskKind::question_generation, 0.3},
        {TaskKind::verification, 0.0},
        {TaskKind::understanding_update, 0.0},
        {TaskKind::bug_fix_collection, 0.0},
        {TaskKind::resolution_check, 0.0},
        {TaskKind::student_reply, 0.0},
    };
    int max_output_tokens = 1024;
    std::chrono::milliseconds timeout{60'000};
    int retry_limit = 3;
    std::chrono::milliseconds backoff_base{500};
    // Optional JSON-lines mirror of the exchange log.
    std::string log_path;

    GenerationParams params_for(TaskKind kind) const;

    // Reads "temperatures", "max_output_tokens", "timeout_ms", "retry_limit",
    // "backoff_ms", "log_path" from a JSON object; other keys are ignored.
    static GatewayConfig from_json(const Json& j);
    static GatewayConfig from_json(const Json& j, GatewayConfig base);
    // SOCRATIC_TEMPERATURE_<TASK_KIND>, SOCRATIC_MAX_OUTPUT_TOKENS,
    // SOCRATIC_TIMEOUT_MS, SOCRATIC_RETRY_LIMIT.
    void apply_env();
};

struct GatewayExchange {
    std::int64_t ordinal = 0;
    ChatRequest request;
    std::optional<ChatResponse> response;
    std::string error;
    int attempts = 0;
};

class Gateway {
public:
    using Sleeper = std::function<void(std::chrono::milliseconds)>;

    Gateway(std::shared_ptr<Provider> provider, GatewayConfig config = {});

    // Overwrites request.generation_params from the per-task table, then
    // dispatches with retry on transient errors. Every call is logged once.
    ChatResponse complete(ChatRequest request);
    ChatResponse complete(TaskKind kind, std::vector<ChatMessage> messages);

    std::vector<GatewayExchange> log() const;
    std::size_t log_size() const;
    std::string provider_id() const { return provider_->id(); }
    const GatewayConfig& config() const { return config_; }
    void set_sleeper(Sleeper sleeper) { sleeper_ = std::move(sleeper); }

private:
    void record(GatewayExchange exchange);

    std::shared_ptr<Provider> provider_;
    GatewayConfig config_;
    Sleeper sleeper_;
    mutable std::mutex log_mutex_;
    std::vector<GatewayExchange> log_;
};

// ---- providers ------------------------------------------------------------

struct MockEntry {
    std::optional<TaskKind> task_kind;
    std::string contains;
    std::string text;
    // Simulated failure instead of a completion.
    std::optional<GatewayErrorKind> error;
    // How many calls this entry answers; 0 means unlimited.
    int times = 1;
};

// Canned responses consumed in order: each call takes the first entry whose
// matchers accept the request. Unmatched calls raise script_exhausted.
class MockProvider : public Provider {
public:
    explicit MockProvider(std::vector<MockEntry> entries);

    ChatResponse send(const ChatRequest& request) override;
    std::string id() const override { return "mock"; }

    std::vector<ChatRequest> dispatched() const;
    std::size_t remaining() const;

private:
    mutable std::mutex mutex_;
    std::vector<MockEntry> entries_;
    std::vector<int> used_;
    std::vector<ChatRequest> dispatched_;
};

std::shared_ptr<MockProvider> script_mock(std::vector<MockEntry> entries);
// Accepts either an array of entries or {"responses": [...]}.
std::vector<MockEntry> mock_entries_from_json(const Json& j);
std::shared_ptr<MockProvider> load_mock_script(const std::string& path);

struct HttpProviderConfig {
    std::string endpoint;  // base URL, e.g. https://api.openai.com/v1
    std::string model;
    std::string api_key;

    // ENDPOINT, MODEL, API_KEY.
    static HttpProviderConfig from_env();
};

// Chat-completions over HTTP(S).
class HttpProvider : public Provider {
public:
    explicit HttpProvider(HttpProviderConfig config);

    ChatResponse send(const ChatRequest& request) override;
    std::string id() const override { return "http:" + config_.model; }

    // Exposed for tests: the JSON body sent for a request.
    Json request_body(const ChatRequest& request) const;
    // Exposed for tests: extracts the completion from a response body.
    static ChatResponse parse_response(const std::string& body, const std::string& provider_id);

private:
    HttpProviderConfig config_;
    std::string scheme_host_port_;
    std::string base_path_;
};

} // namespace socratic
