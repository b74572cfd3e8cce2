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
#include <string>
#include <vector>

#include "socratic/gateway.hpp"

namespace socratic {

using SlotValues = std::map<std::string, std::string>;

struct RenderedPrompt {
    std::string name;
    TaskKind task_kind = TaskKind::verification;
    std::string system;
    std::string user;

    std::vector<ChatMessage> messages() const;
};

// One prompt: a persona (system text) plus a task body, both with {{slot}}
// markers.
struct PromptTemplate {
    std::string name;
    std::string persona;
    TaskKind task_kind = TaskKind::verification;
    std::string system_text;
    std::string body_text;
    std::vector<std::string> required_slots;

    // Throws TemplateError listing any required slot absent from `values`.
    // Values are inserted verbatim and never rescanned for markers.
    RenderedPrompt render(const SlotValues& values) const;
};

// Slot names in order of first appearance.
std::vector<std::string> slots_in(std::string_view text);

class TemplateCatalog {
public:
    static constexpr const char* kVersion = "1";
    static const std::vector<std::string>& template_names();

    // Catalog compiled into the library from the templates/ directory.
    static const TemplateCatalog& builtin();
    // Same layout as templates/: <name>.txt files plus personas/<persona>.txt.
    static TemplateCatalog load_dir(const std::string& dir);
    // relative path -> contents
    static TemplateCatalog from_files(const std::map<std::string, std::string>& files);

    const PromptTemplate& get(const std::string& name) const;
    // SHA-256 over the catalog version and every file, hex encoded.
    const std::string& hash() const { return hash_; }
    const std::map<std::string, PromptTemplate>& templates() const { return templates_; }

private:
    std::map<std::string, PromptTemplate> templates_;
    std::string hash_;
};

} // namespace socratic
