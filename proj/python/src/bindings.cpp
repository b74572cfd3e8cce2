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

// Thin bindings over the C++ core. Structured values cross the boundary as
// JSON text; the Python package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "socratic/agents.hpp"
#include "socratic/datasets.hpp"
#include "socratic/evaluation.hpp"
#include "socratic/gateway.hpp"
#include "socratic/orchestrator.hpp"
#include "socratic/parsers.hpp"
#include "socratic/serialize.hpp"
#include "socratic/templates.hpp"

namespace py = pybind11;
using namespace socratic;

namespace {

std::vector<std::string> parse_state(const std::string& text) {
    auto parsed = parse_state_representation(text);
    if (!ok(parsed)) throw py::value_error(std::get<ParseError>(parsed).message);
    return std::get<ParsedStateRepresentation>(parsed).tasks;
}

std::string load_problems(const std::string& path) { return problem_set_to_json(load_problem_set(path)).dump(); }

std::string validate_problems(const std::string& path) {
    Json out = Json::array();
    for (const auto& f : validate(load_problem_set(path))) {
        out.push_back({{"severity", to_string(f.severity)}, {"problem_id", f.problem_id}, {"message", f.message}});
    }
    return out.dump();
}

// One offline session: scripted model replies and a scripted student.
std::string run_mock(const std::string& problems_path, const std::string& problem_id, const std::string& mock_path,
                     const std::string& student_path, const std::string& config_json) {
    auto set = load_problem_set(problems_path);
    const ProblemBundle* problem = nullptr;
    for (const auto& p : set.problems) {
        if (p.id == problem_id) problem = &p;
    }
    if (problem == nullptr) throw py::key_error("unknown problem '" + problem_id + "'");
    auto config = config_from_json(config_json.empty() ? Json::object() : Json::parse(config_json));

    auto catalog = TemplateCatalog::builtin();
    Gateway gateway(load_mock_script(mock_path), GatewayConfig{});
    Agents agents(gateway, catalog);
    Tutor tutor(agents, logical_clock());
    auto student = ScriptedStudent::load(student_path);
    return transcript_to_string(run_to_completion(tutor, *problem, student, config, problem_id));
}

bool replays(const std::string& transcript_text) {
    auto t = transcript_from_string(transcript_text);
    return t.final_state.has_value() && replay(t) == *t.final_state;
}

double py_success_rate(const std::vector<std::string>& suggested, const std::vector<std::string>& truth_fixes) {
    std::vector<BugRecord> truth;
    for (const auto& f : truth_fixes) truth.push_back({"", f, std::nullopt});
    return success_rate(BugFixList{suggested}, truth, normalized_equality_oracle());
}

std::string py_aggregate_qualitative(const std::string& annotations_json, const std::map<std::string, int>& counts) {
    auto s = aggregate_qualitative(annotations_from_json(Json::parse(annotations_json)), counts);
    return Json{{"relevant", s.relevant}, {"indirect", s.indirect}, {"logic", s.logic}}.dump();
}

std::vector<py::tuple> py_side_by_side(const std::vector<std::vector<std::pair<std::string, int>>>& rankings) {
    std::vector<py::tuple> out;
    for (const auto& p : side_by_side(rankings)) out.push_back(py::make_tuple(p.a, p.b, p.percent, p.problems));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "socratic C++ core";

    static py::exception<Error> error(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        } catch (const Json::exception& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("parse_state", &parse_state, py::arg("text"));
    m.def("load_problems", &load_problems, py::arg("path"));
    m.def("validate_problems", &validate_problems, py::arg("path"));
    m.def("run_mock", &run_mock, py::arg("problems_path"), py::arg("problem_id"), py::arg("mock_path"),
          py::arg("student_path"), py::arg("config_json") = "");
    m.def("replays", &replays, py::arg("transcript"));
    m.def("success_rate", &py_success_rate, py::arg("suggested"), py::arg("truth"));
    m.def("aggregate_qualitative", &py_aggregate_qualitative, py::arg("annotations_json"), py::arg("counts"));
    m.def("side_by_side", &py_side_by_side, py::arg("rankings"));
}
