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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "harness.hpp"
#include "socratic/agents.hpp"
#include "socratic/templates.hpp"
#include "socratic/text.hpp"

using namespace socratic;
using namespace socratic::testing;

namespace fs = std::filesystem;

namespace {

SlotValues fill_all(const PromptTemplate& t, const std::string& value = "VALUE") {
    SlotValues v;
    for (const auto& s : t.required_slots) v[s] = value;
    return v;
}

// Ground truth a student must never be shown: fixes, their code spans,
// descriptions and corrected lines, unless the buggy code already has them.
std::vector<std::string> forbidden_strings(const ProblemBundle& p) {
    std::vector<std::string> out;
    auto consider = [&](std::string_view s) {
        s = text::trim(s);
        if (s.size() >= 8 && p.buggy_code.find(s) == std::string::npos) out.emplace_back(s);
    };
    for (const auto& bug : p.bugs) {
        consider(bug.fix);
        consider(bug.description);
        std::size_t start = bug.fix.find('`');
        while (start != std::string::npos) {
            auto end = bug.fix.find('`', start + 1);
            if (end == std::string::npos) break;
            consider(std::string_view(bug.fix).substr(start + 1, end - start - 1));
            start = bug.fix.find('`', end + 1);
        }
    }
    for (const auto& line : text::split_lines(p.correct_code)) consider(line);
    return out;
}

void check_clean(const std::string& rendered, const ProblemBundle& p, const std::string& what) {
    for (const auto& f : forbidden_strings(p)) {
        CHECK_MESSAGE(!text::icontains(rendered, f), what << " for " << p.id << " leaks: " << f);
    }
}

} // namespace

TEST_CASE("the catalog has the ten named templates with their task kinds") {
    const auto& c = TemplateCatalog::builtin();
    CHECK(c.templates().size() == 10);
    for (const auto& name : TemplateCatalog::template_names()) CHECK(c.templates().count(name) == 1);
    CHECK(c.get("state_estimation").task_kind == TaskKind::state_estimation);
    CHECK(c.get("initial_question").task_kind == TaskKind::question_generation);
    CHECK(c.get("sibling_question").task_kind == TaskKind::question_generation);
    CHECK(c.get("child_question").task_kind == TaskKind::question_generation);
    CHECK(c.get("verify_response").task_kind == TaskKind::verification);
    CHECK(c.get("update_understanding").task_kind == TaskKind::understanding_update);
    CHECK(c.get("student_bug_fixes").task_kind == TaskKind::bug_fix_collection);
    CHECK(c.get("check_resolution").task_kind == TaskKind::resolution_check);
    CHECK(c.get("student_reply").task_kind == TaskKind::student_reply);
    CHECK_THROWS_AS(c.get("nope"), TemplateError);
}

TEST_CASE("personas carry the documented opening lines") {
    const auto& c = TemplateCatalog::builtin();
    CHECK(text::icontains(c.get("initial_question").system_text, "You are an Instructor helping a Student"));
    CHECK(text::icontains(c.get("student_reply").system_text, "as if you were an introductory programmer"));
    CHECK(text::icontains(c.get("verify_response").system_text,
                          "determine the Student's understanding (or lack thereof)"));
    CHECK(text::icontains(c.get("state_estimation").body_text, "Implement a Fibonacci sequence using recursion"));
}

TEST_CASE("rendering with every required slot leaves no markers") {
    for (const auto& [name, t] : TemplateCatalog::builtin().templates()) {
        auto r = t.render(fill_all(t));
        CHECK_MESSAGE(r.system.find("{{") == std::string::npos, name);
        CHECK_MESSAGE(r.user.find("{{") == std::string::npos, name);
        CHECK(r.task_kind == t.task_kind);
        CHECK(r.messages().front().role == Role::system);
    }
}

TEST_CASE("a missing slot is an error naming it") {
    const auto& t = TemplateCatalog::builtin().get("sibling_question");
    auto values = fill_all(t);
    values.erase("previous_misunderstanding");
    try {
        t.render(values);
        FAIL("expected TemplateError");
    } catch (const TemplateError& e) {
        CHECK(std::string(e.what()).find("previous_misunderstanding") != std::string::npos);
    }
}

TEST_CASE("slot values are inserted verbatim and not rescanned") {
    const auto& t = TemplateCatalog::builtin().get("student_reply");
    auto values = fill_all(t);
    values["instructor_message"] = "What does {{buggy_code}} mean?";
    auto r = t.render(values);
    CHECK(r.user.find("What does {{buggy_code}} mean?") != std::string::npos);
}

TEST_CASE("slots_in lists names in first-appearance order") {
    CHECK(slots_in("{{a}} x {{b}} {{a}} {{ not a slot }} {{}}") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("the misunderstanding slot carries the verifier explanation") {
    const auto& t = TemplateCatalog::builtin().get("sibling_question");
    auto values = fill_all(t);
    values["previous_misunderstanding"] = "1. off-by-one confusion about where the sequence ends";
    auto r = t.render(values);
    auto at = r.user.find("previous_misunderstanding:\n1. off-by-one confusion");
    CHECK(at != std::string::npos);
}

TEST_CASE("the understanding phrase is unique to its template; the target label is shared") {
    int with_phrase = 0;
    int with_label = 0;
    for (const auto& [name, t] : TemplateCatalog::builtin().templates()) {
        auto r = t.render(fill_all(t));
        auto all = r.system + r.user;
        if (all.find("REQUIRE them to comprehend") != std::string::npos) {
            ++with_phrase;
            CHECK(name == "update_understanding");
        }
        if (all.find("target_understanding") != std::string::npos) ++with_label;
    }
    CHECK(with_phrase == 1);
    // Also used by the three question templates, as in the source prompts.
    CHECK(with_label == 4);
}

TEST_CASE("catalog hash is stable and sensitive to edits") {
    const auto& builtin = TemplateCatalog::builtin();
    CHECK(builtin.hash().size() == 64);
    auto from_dir = TemplateCatalog::load_dir(source_path("templates"));
    CHECK(from_dir.hash() == builtin.hash());

    auto dir = fs::temp_directory_path() / "socratic_templates_edit";
    fs::remove_all(dir);
    fs::copy(source_path("templates"), dir, fs::copy_options::recursive);
    {
        std::ofstream out(dir / "student_reply.txt", std::ios::app);
        out << "\nKeep it short.";
    }
    auto edited = TemplateCatalog::load_dir(dir.string());
    CHECK(edited.hash() != builtin.hash());
    CHECK(text::icontains(edited.get("student_reply").body_text, "Keep it short."));

    fs::remove(dir / "model_answer.txt");
    CHECK_THROWS_AS(TemplateCatalog::load_dir(dir.string()), TemplateError);
    fs::remove_all(dir);
    CHECK_THROWS_AS(TemplateCatalog::load_dir(dir.string()), TemplateError);
}

TEST_CASE("malformed template files are rejected") {
    auto files = std::map<std::string, std::string>{};
    for (const auto& entry : fs::recursive_directory_iterator(source_path("templates"))) {
        if (entry.is_regular_file()) {
            files[fs::relative(entry.path(), source_path("templates")).generic_string()] =
                read_file(entry.path().string());
        }
    }
    CHECK_NOTHROW(TemplateCatalog::from_files(files));

    auto no_sep = files;
    no_sep["verify_response.txt"] = "name: verify_response\npersona: verifier\n";
    CHECK_THROWS_AS(TemplateCatalog::from_files(no_sep), TemplateError);

    auto bad_kind = files;
    bad_kind["verify_response.txt"] = "name: verify_response\npersona: verifier\ntask_kind: guessing\n---\nbody";
    CHECK_THROWS_AS(TemplateCatalog::from_files(bad_kind), TemplateError);

    auto bad_persona = files;
    bad_persona["verify_response.txt"] = "name: verify_response\npersona: oracle\ntask_kind: verification\n---\nb";
    CHECK_THROWS_AS(TemplateCatalog::from_files(bad_persona), TemplateError);
}

TEST_CASE("student-facing prompts never carry ground truth, for every sample problem") {
    Harness h(script_mock({MockEntry{std::nullopt, "", "x", std::nullopt, 0}}));
    for (const auto& p : sample_set().problems) {
        REQUIRE_FALSE(forbidden_strings(p).empty());
        QuestionNode q;
        q.text = "What should the function return for n = 3?";
        std::vector<Turn> history{{q, "I think [0, 1, 1].", Verdict{true, true, "fine"}}};

        auto reply = h.agents.render_student_reply(p, "Which line handles that case?", history);
        CHECK(text::icontains(reply.system + reply.user, p.buggy_code));
        check_clean(reply.system + reply.user, p, "student_reply");

        auto fixes = h.agents.render_student_bug_fixes(p, history);
        check_clean(fixes.system + fixes.user, p, "student_bug_fixes");
    }
}

TEST_CASE("instructor and verifier prompts do carry the ground truth they need") {
    const auto& p = fib1();
    const auto& c = TemplateCatalog::builtin();
    SlotValues v{{"problem", p.problem_statement},  {"buggy_code", p.buggy_code}, {"bug_fixes", p.bugs[0].fix},
                 {"bug_descriptions", "d"},         {"correct_code", p.correct_code}};
    auto state = c.get("state_estimation").render(v);
    CHECK(text::icontains(state.system, p.correct_code));
    CHECK(text::icontains(state.user, p.bugs[0].fix));
}
