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

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include <httplib.h>

#include "socratic/gateway.hpp"
#include "socratic/text.hpp"

namespace socratic {

namespace {

int estimate_tokens(std::string_view s) { return static_cast<int>((s.size() + 3) / 4); }

std::optional<GatewayErrorKind> error_kind_from_string(const std::string& name) {
    for (auto kind : {GatewayErrorKind::provider_unreachable, GatewayErrorKind::auth_failure,
                      GatewayErrorKind::retry_exhausted, GatewayErrorKind::timeout,
                      GatewayErrorKind::script_exhausted, GatewayErrorKind::bad_response}) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

} // namespace

MockProvider::MockProvider(std::vector<MockEntry> entries)
    : entries_(std::move(entries)), used_(entries_.size(), 0) {
    if (entries_.empty()) throw ConfigError("mock script must contain at least one response");
}

ChatResponse MockProvider::send(const ChatRequest& request) {
    std::lock_guard lock(mutex_);
    dispatched_.push_back(request);
    const auto flat = request.flattened();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& entry = entries_[i];
        if (entry.times != 0 && used_[i] >= entry.times) continue;
        if (entry.task_kind && *entry.task_kind != request.task_kind) continue;
        if (!entry.contains.empty() && flat.find(entry.contains) == std::string::npos) continue;
        ++used_[i];
        if (entry.error) throw GatewayError(*entry.error, "scripted failure");
        ChatResponse response;
        response.text = entry.text;
        response.provider_id = id();
        response.usage = {estimate_tokens(flat), estimate_tokens(entry.text)};
        return response;
    }
    throw GatewayError(GatewayErrorKind::script_exhausted,
                       "no scripted response left for a " + to_string(request.task_kind) + " request");
}

std::vector<ChatRequest> MockProvider::dispatched() const {
    std::lock_guard lock(mutex_);
    return dispatched_;
}

std::size_t MockProvider::remaining() const {
    std::lock_guard lock(mutex_);
    std::size_t n = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].times == 0 || used_[i] < entries_[i].times) ++n;
    }
    return n;
}

std::shared_ptr<MockProvider> script_mock(std::vector<MockEntry> entries) {
    return std::make_shared<MockProvider>(std::move(entries));
}

std::vector<MockEntry> mock_entries_from_json(const Json& j) {
    const Json& list = j.is_object() ? j.at("responses") : j;
    if (!list.is_array()) throw ConfigError("mock script must be an array of responses");
    std::vector<MockEntry> entries;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& e = list[i];
        auto where = "mock script entry " + std::to_string(i);
        if (!e.is_object()) throw ConfigError(where + " must be an object");
        MockEntry entry;
        if (auto it = e.find("task_kind"); it != e.end() && !it->is_null()) {
            entry.task_kind = task_kind_from_string(it->get<std::string>());
            if (!entry.task_kind) throw ConfigError(where + ": unknown task_kind");
        }
        entry.contains = e.value("contains", std::string{});
        entry.text = e.value("text", std::string{});
        entry.times = e.value("times", 1);
        if (auto it = e.find("error"); it != e.end() && !it->is_null()) {
            entry.error = error_kind_from_string(it->get<std::string>());
            if (!entry.error) throw ConfigError(where + ": unknown error kind");
        }
        if (entry.times < 0) throw ConfigError(where + ": times must be >= 0");
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::shared_ptr<MockProvider> load_mock_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open mock script '" + path + "'");
    try {
        return script_mock(mock_entries_from_json(Json::parse(in)));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("mock script '" + path + "': " + e.what());
    }
}

// ---- HTTP -----------------------------------------------------------------

HttpProviderConfig HttpProviderConfig::from_env() {
    HttpProviderConfig c;
    if (const char* v = std::getenv("ENDPOINT")) c.endpoint = v;
    if (const char* v = std::getenv("MODEL")) c.model = v;
    if (const char* v = std::getenv("API_KEY")) c.api_key = v;
    return c;
}

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
    if (config_.endpoint.empty()) throw ConfigError("ENDPOINT is not set");
    if (config_.model.empty()) throw ConfigError("MODEL is not set");
    if (config_.api_key.empty()) throw ConfigError("API_KEY is not set");
    static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(config_.endpoint, m, url)) {
        throw ConfigError("ENDPOINT must look like http(s)://host[:port][/path]");
    }
    scheme_host_port_ = m[1].str();
    base_path_ = m[2].matched ? m[2].str() : std::string{};
    while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
}

Json HttpProvider::request_body(const ChatRequest& request) const {
    Json messages = Json::array();
    for (const auto& m : request.messages) {
        const char* role = m.role == Role::system ? "system" : m.role == Role::assistant ? "assistant" : "user";
        messages.push_back({{"role", role}, {"content", m.text}});
    }
    return Json{{"model", config_.model},
                {"messages", messages},
                {"temperature", request.generation_params.temperature},
                {"max_tokens", request.generation_params.max_output_tokens},
                {"stream", false}};
}

ChatResponse HttpProvider::parse_response(const std::string& body, const std::string& provider_id) {
    Json j;
    try {
        j = Json::parse(body);
    } catch (const std::exception& e) {
        throw GatewayError(GatewayErrorKind::bad_response, std::string("response is not JSON: ") + e.what());
    }
    ChatResponse out;
    out.provider_id = provider_id;
    try {
        out.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const std::exception&) {
        throw GatewayError(GatewayErrorKind::bad_response, "response has no choices[0].message.content");
    }
    if (auto usage = j.find("usage"); usage != j.end() && usage->is_object()) {
        out.usage.prompt_tokens = usage->value("prompt_tokens", 0);
        out.usage.completion_tokens = usage->value("completion_tokens", 0);
    }
    return out;
}

ChatResponse HttpProvider::send(const ChatRequest& request) {
    httplib::Client client(scheme_host_port_);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(request.generation_params.timeout).count();
    client.set_connection_timeout(static_cast<time_t>(std::max<long long>(1, secs)), 0);
    client.set_read_timeout(static_cast<time_t>(std::max<long long>(1, secs)), 0);
    client.set_write_timeout(static_cast<time_t>(std::max<long long>(1, secs)), 0);
    httplib::Headers headers{{"Authorization", "Bearer " + config_.api_key}};

    auto result = client.Post(base_path_ + "/chat/completions", headers, request_body(request).dump(),
                              "application/json");
    if (!result) {
        auto err = result.error();
        auto what = httplib::to_string(err);
        if (err == httplib::Error::Read || err == httplib::Error::Write ||
            err == httplib::Error::ConnectionTimeout) {
            throw GatewayError(GatewayErrorKind::timeout, what);
        }
        throw GatewayError(GatewayErrorKind::provider_unreachable, what);
    }
    const int status = result->status;
    if (status == 401 || status == 403) {
        throw GatewayError(GatewayErrorKind::auth_failure, "HTTP " + std::to_string(status));
    }
    if (status == 408) throw GatewayError(GatewayErrorKind::timeout, "HTTP 408");
    if (status == 429 || status >= 500) {
        throw GatewayError(GatewayErrorKind::provider_unreachable, "HTTP " + std::to_string(status));
    }
    if (status < 200 || status >= 300) {
        throw GatewayError(GatewayErrorKind::bad_response, "HTTP " + std::to_string(status) + ": " + result->body);
    }
    return parse_response(result->body, id());
}

} // namespace socratic
