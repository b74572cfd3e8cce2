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

#include "socratic/templates.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "socratic/text.hpp"

namespace socratic {

// Defined in the generated templates_builtin.cpp.
const std::map<std::string, std::string>& builtin_template_files();

namespace {

constexpr std::string_view kOpen = "{{";
constexpr std::string_view kClose = "}}";

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

bool is_slot_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Calls on_text for literal runs and on_slot for each {{name}}.
template <typename OnText, typename OnSlot>
void scan(std::string_view text, OnText on_text, OnSlot on_slot) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto open = text.find(kOpen, pos);
        if (open == std::string_view::npos) break;
        auto close = text.find(kClose, open + kOpen.size());
        if (close == std::string_view::npos) break;
        auto name = text.substr(open + kOpen.size(), close - open - kOpen.size());
        if (name.empty() || !std::all_of(name.begin(), name.end(), is_slot_char)) {
            on_text(text.substr(pos, open + kOpen.size() - pos));
            pos = open + kOpen.size();
            continue;
        }
        on_text(text.substr(pos, open - pos));
        on_slot(std::string(name));
        pos = close + kClose.size();
    }
    on_text(text.substr(pos));
}

std::string substitute(std::string_view text, const SlotValues& values) {
    std::string out;
    scan(
        text, [&](std::string_view literal) { out += literal; },
        [&](const std::string& slot) { out += values.at(slot); });
    return out;
}

} // namespace

std::vector<ChatMessage> RenderedPrompt::messages() const {
    return {{Role::system, system}, {Role::user, user}};
}

std::vector<std::string> slots_in(std::string_view text) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    scan(
        text, [](std::string_view) {},
        [&](const std::string& slot) {
            if (seen.insert(slot).second) out.push_back(slot);
        });
    return out;
}

RenderedPrompt PromptTemplate::render(const SlotValues& values) const {
    std::vector<std::string> missing;
    for (const auto& slot : required_slots) {
        if (!values.contains(slot)) missing.push_back(slot);
    }
    if (!missing.empty()) {
        throw TemplateError("template '" + name + "' is missing slot(s): " + text::join(missing, ", "));
    }
    return {name, task_kind, substitute(system_text, values), substitute(body_text, values)};
}

const std::vector<std::string>& TemplateCatalog::template_names() {
    static const std::vector<std::string> names{
        "state_estimation", "verify_response",  "update_understanding", "student_bug_fixes", "check_resolution",
        "sibling_question", "child_question",   "initial_question",     "student_reply",     "model_answer"};
    return names;
}

TemplateCatalog TemplateCatalog::from_files(const std::map<std::string, std::string>& files) {
    TemplateCatalog catalog;
    std::string digest_input = std::string("catalog-version:") + kVersion + "\n";
    for (const auto& [path, contents] : files) {
        digest_input += path;
        digest_input.push_back('\0');
        digest_input += contents;
        digest_input.push_back('\0');
    }
    catalog.hash_ = sha256_hex(digest_input);

    for (const auto& name : template_names()) {
        auto it = files.find(name + ".txt");
        if (it == files.end()) throw TemplateError("template file '" + name + ".txt' is missing");
        const std::string& raw = it->second;
        auto sep = raw.find("\n---\n");
        if (sep == std::string::npos) throw TemplateError(name + ".txt: missing '---' header separator");

        PromptTemplate t;
        t.body_text = std::string(text::trim(raw.substr(sep + 5)));
        std::string task_kind;
        for (const auto& line : text::split_lines(raw.substr(0, sep))) {
            auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            auto key = std::string(text::trim(line.substr(0, colon)));
            auto value = std::string(text::trim(line.substr(colon + 1)));
            if (key == "name") t.name = value;
            if (key == "persona") t.persona = value;
            if (key == "task_kind") task_kind = value;
        }
        if (t.name != name) throw TemplateError(name + ".txt: header name '" + t.name + "' does not match");
        auto kind = task_kind_from_string(task_kind);
        if (!kind) throw TemplateError(name + ".txt: unknown task_kind '" + task_kind + "'");
        t.task_kind = *kind;
        auto persona = files.find("personas/" + t.persona + ".txt");
        if (persona == files.end()) throw TemplateError(name + ".txt: persona '" + t.persona + "' not found");
        t.system_text = std::string(text::trim(persona->second));
        t.required_slots = slots_in(t.system_text);
        for (auto& slot : slots_in(t.body_text)) {
            if (std::find(t.required_slots.begin(), t.required_slots.end(), slot) == t.required_slots.end()) {
                t.required_slots.push_back(slot);
            }
        }
        catalog.templates_.emplace(name, std::move(t));
    }
    return catalog;
}

TemplateCatalog TemplateCatalog::load_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw TemplateError("template directory '" + dir + "' does not exist");
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        files[fs::relative(entry.path(), dir).generic_string()] = buf.str();
    }
    return from_files(files);
}

const TemplateCatalog& TemplateCatalog::builtin() {
    static const TemplateCatalog catalog = from_files(builtin_template_files());
    return catalog;
}

const PromptTemplate& TemplateCatalog::get(const std::string& name) const {
    auto it = templates_.find(name);
    if (it == templates_.end()) throw TemplateError("unknown template '" + name + "'");
    return it->second;
}

} // namespace socratic
