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

#include "socratic/gateway.hpp"

#include <cstdlib>
#include <fstream>
#include <thread>

#include "socratic/text.hpp"

namespace socratic {

namespace {

constexpr std::pair<TaskKind, const char*> kTaskKindNames[] = {
    {TaskKind::state_estimation, "state_estimation"},
    {TaskKind::question_generation, "question_generation"},
    {TaskKind::verification, "verification"},
    {TaskKind::understanding_update, "understanding_update"},
    {TaskKind::bug_fix_collection, "bug_fix_collection"},
    {TaskKind::resolution_check, "resolution_check"},
    {TaskKind::student_reply, "student_reply"},
};

constexpr std::pair<GatewayErrorKind, const char*> kErrorNames[] = {
    {GatewayErrorKind::provider_unreachable, "provider_unreachable"},
    {GatewayErrorKind::auth_failure, "auth_failure"},
    {GatewayErrorKind::retry_exhausted, "retry_exhausted"},
    {GatewayErrorKind::timeout, "timeout"},
    {GatewayErrorKind::script_exhausted, "script_exhausted"},
    {GatewayErrorKind::bad_response, "bad_response"},
    {GatewayErrorKind::invalid_request, "invalid_request"},
};

const char* role_name(Role role) {
    switch (role) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
    }
    return "user";
}

Json exchange_json(const GatewayExchange& ex) {
    Json messages = Json::array();
    for (const auto& m : ex.request.messages) messages.push_back({{"role", role_name(m.role)}, {"text", m.text}});
    Json j{{"ordinal", ex.ordinal},
           {"task_kind", to_string(ex.request.task_kind)},
           {"temperature", ex.request.generation_params.temperature},
           {"messages", messages},
           {"attempts", ex.attempts}};
    if (ex.response) {
        j["response"] = {{"text", ex.response->text},
                         {"provider_id", ex.response->provider_id},
                         {"prompt_tokens", ex.response->usage.prompt_tokens},
                         {"completion_tokens", ex.response->usage.completion_tokens}};
    }
    if (!ex.error.empty()) j["error"] = ex.error;
    return j;
}

std::optional<std::string> env(const char* name) {
    if (const char* v = std::getenv(name); v != nullptr && *v != '\0') return std::string(v);
    return std::nullopt;
}

} // namespace

std::string to_string(TaskKind kind) {
    for (const auto& [k, name] : kTaskKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<TaskKind> task_kind_from_string(std::string_view name) {
    for (const auto& [k, n] : kTaskKindNames) {
        if (name == n) return k;
    }
    return std::nullopt;
}

const std::vector<TaskKind>& all_task_kinds() {
    static const std::vector<TaskKind> kinds = [] {
        std::vector<TaskKind> out;
        for (const auto& [k, name] : kTaskKindNames) out.push_back(k);
        return out;
    }();
    return kinds;
}

std::string to_string(GatewayErrorKind kind) {
    for (const auto& [k, name] : kErrorNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::string ChatRequest::flattened() const {
    std::string out;
    for (const auto& m : messages) {
        out += m.text;
        out += '\n';
    }
    return out;
}

GenerationParams GatewayConfig::params_for(TaskKind kind) const {
    GenerationParams p;
    auto it = temperatures.find(kind);
    p.temperature = it == temperatures.end() ? 0.0 : it->second;
    p.max_output_tokens = max_output_tokens;
    p.timeout = timeout;
    p.retry_limit = retry_limit;
    return p;
}

GatewayConfig GatewayConfig::from_json(const Json& j) { return from_json(j, GatewayConfig{}); }

GatewayConfig GatewayConfig::from_json(const Json& j, GatewayConfig base) {
    if (j.is_null()) return base;
    if (!j.is_object()) throw ConfigError("gateway config must be a JSON object");
    try {
        if (auto it = j.find("temperatures"); it != j.end()) {
            for (const auto& [name, value] : it->items()) {
                auto kind = task_kind_from_string(name);
                if (!kind) throw ConfigError("unknown task kind '" + name + "' in temperatures");
                double t = value.get<double>();
                if (t < 0.0 || t > 1.0) throw ConfigError("temperature for " + name + " must lie in [0,1]");
                base.temperatures[*kind] = t;
            }
        }
        if (auto it = j.find("max_output_tokens"); it != j.end()) base.max_output_tokens = it->get<int>();
        if (auto it = j.find("timeout_ms"); it != j.end()) base.timeout = std::chrono::milliseconds(it->get<int>());
        if (auto it = j.find("retry_limit"); it != j.end()) base.retry_limit = it->get<int>();
        if (auto it = j.find("backoff_ms"); it != j.end()) {
            base.backoff_base = std::chrono::milliseconds(it->get<int>());
        }
        if (auto it = j.find("log_path"); it != j.end()) base.log_path = it->get<std::string>();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("gateway config: ") + e.what());
    }
    if (base.max_output_tokens < 1 || base.retry_limit < 0) {
        throw ConfigError("max_output_tokens must be positive and retry_limit non-negative");
    }
    return base;
}

void GatewayConfig::apply_env() {
    try {
        for (auto kind : all_task_kinds()) {
            auto name = "SOCRATIC_TEMPERATURE_" + text::to_lower(to_string(kind));
            for (auto& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            if (auto v = env(name.c_str())) {
                double t = std::stod(*v);
                if (t < 0.0 || t > 1.0) throw ConfigError(name + " must lie in [0,1]");
                temperatures[kind] = t;
            }
        }
        if (auto v = env("SOCRATIC_MAX_OUTPUT_TOKENS")) max_output_tokens = std::stoi(*v);
        if (auto v = env("SOCRATIC_TIMEOUT_MS")) timeout = std::chrono::milliseconds(std::stoi(*v));
        if (auto v = env("SOCRATIC_RETRY_LIMIT")) retry_limit = std::stoi(*v);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad gateway environment value: ") + e.what());
    }
}

Gateway::Gateway(std::shared_ptr<Provider> provider, GatewayConfig config)
    : provider_(std::move(provider)), config_(std::move(config)),
      sleeper_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
    if (!provider_) throw ConfigError("gateway needs a provider");
}

ChatResponse Gateway::complete(TaskKind kind, std::vector<ChatMessage> messages) {
    ChatRequest request;
    request.task_kind = kind;
    request.messages = std::move(messages);
    return complete(std::move(request));
}

ChatResponse Gateway::complete(ChatRequest request) {
    request.generation_params = config_.params_for(request.task_kind);
    GatewayExchange exchange;
    exchange.request = request;

    if (request.messages.empty() || request.messages.front().role != Role::system) {
        exchange.error = "request must start with a system message";
        record(exchange);
        throw GatewayError(GatewayErrorKind::invalid_request, exchange.error);
    }

    const int limit = request.generation_params.retry_limit;
    for (int attempt = 0;; ++attempt) {
        exchange.attempts = attempt + 1;
        try {
            auto response = provider_->send(request);
            exchange.response = response;
            record(std::move(exchange));
            return response;
        } catch (const GatewayError& e) {
            if (!e.transient()) {
                exchange.error = e.what();
                record(std::move(exchange));
                throw;
            }
            if (attempt >= limit) {
                exchange.error = e.what();
                record(std::move(exchange));
                if (limit == 0) throw;
                throw GatewayError(GatewayErrorKind::retry_exhausted,
                                   std::to_string(limit + 1) + " attempts failed; last: " + e.what());
            }
            sleeper_(config_.backoff_base * (1LL << std::min(attempt, 16)));
        }
    }
}

void Gateway::record(GatewayExchange exchange) {
    std::lock_guard lock(log_mutex_);
    exchange.ordinal = static_cast<std::int64_t>(log_.size()) + 1;
    if (!config_.log_path.empty()) {
        std::ofstream out(config_.log_path, std::ios::app);
        out << exchange_json(exchange).dump() << '\n';
    }
    log_.push_back(std::move(exchange));
}

std::vector<GatewayExchange> Gateway::log() const {
    std::lock_guard lock(log_mutex_);
    return log_;
}

std::size_t Gateway::log_size() const {
    std::lock_guard lock(log_mutex_);
    return log_.size();
}

} // namespace socratic
