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

// socratic: batch runs, live terminal tutoring, replay, dataset validation,
// evaluation reports and the HTTP session service.

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "socratic/agents.hpp"
#include "socratic/datasets.hpp"
#include "socratic/evaluation.hpp"
#include "socratic/gateway.hpp"
#include "socratic/orchestrator.hpp"
#include "socratic/serialize.hpp"
#include "socratic/service.hpp"
#include "socratic/templates.hpp"

namespace fs = std::filesystem;
using namespace socratic;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitConfig = 2;

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(read_text(path));
    } catch (const Json::parse_error& e) {
        throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text(const fs::path& path, const std::string& body) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + path.string() + "'");
        out << body;
    }
    fs::rename(tmp, path);
}

// Optional JSON config: {"session": {...}, "gateway": {...}, "templates": "dir",
// "http": {"endpoint": ..., "model": ...}, "service": {...}}.
struct FileConfig {
    Json raw = Json::object();

    static FileConfig load(const std::string& path) {
        FileConfig c;
        if (path.empty()) return c;
        c.raw = read_json(path);
        if (!c.raw.is_object()) throw ConfigError("config file must hold a JSON object");
        for (const auto& [key, value] : c.raw.items()) {
            if (key != "session" && key != "gateway" && key != "templates" && key != "http" && key != "service") {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
        return c;
    }
    SessionConfig session() const {
        return raw.contains("session") ? config_from_json(raw["session"]) : SessionConfig{};
    }
    GatewayConfig gateway() const {
        auto g = GatewayConfig::from_json(raw.value("gateway", Json(nullptr)));
        g.apply_env();
        return g;
    }
    std::string templates() const { return raw.value("templates", std::string{}); }
};

struct ProviderSpec {
    bool mock = false;
    std::string mock_path;  // file, or directory of <problem_id>.json

    static ProviderSpec parse(const std::string& spec) {
        ProviderSpec p;
        if (spec.rfind("mock:", 0) == 0) {
            p.mock = true;
            p.mock_path = spec.substr(5);
            if (p.mock_path.empty()) throw ConfigError("--provider mock:<script> needs a path");
            if (!fs::exists(p.mock_path)) throw ConfigError("mock script '" + p.mock_path + "' not found");
        } else if (spec != "http") {
            throw ConfigError("--provider must be 'http' or 'mock:<script-file-or-dir>'");
        }
        return p;
    }
    bool per_problem() const { return mock && fs::is_directory(mock_path); }
};

std::shared_ptr<Provider> make_provider(const ProviderSpec& spec, const FileConfig& config,
                                        const std::string& problem_id) {
    if (spec.mock) {
        if (spec.per_problem()) return load_mock_script((fs::path(spec.mock_path) / (problem_id + ".json")).string());
        return load_mock_script(spec.mock_path);
    }
    auto http = HttpProviderConfig::from_env();
    if (auto it = config.raw.find("http"); it != config.raw.end()) {
        if (http.endpoint.empty()) http.endpoint = it->value("endpoint", std::string{});
        if (http.model.empty()) http.model = it->value("model", std::string{});
    }
    return std::make_shared<HttpProvider>(http);
}

// Everything one tutoring run needs, wired together.
struct Runtime {
    std::shared_ptr<Provider> provider;
    TemplateCatalog catalog;
    std::unique_ptr<Gateway> gateway;
    std::unique_ptr<Agents> agents;
    std::unique_ptr<Tutor> tutor;

    Runtime(std::shared_ptr<Provider> p, const FileConfig& config, const std::string& template_dir, bool mock)
        : provider(std::move(p)) {
        auto dir = template_dir.empty() ? config.templates() : template_dir;
        catalog = dir.empty() ? TemplateCatalog::builtin() : TemplateCatalog::load_dir(dir);
        gateway = std::make_unique<Gateway>(provider, config.gateway());
        agents = std::make_unique<Agents>(*gateway, catalog);
        tutor = std::make_unique<Tutor>(*agents, mock ? logical_clock() : system_clock());
    }
};

std::vector<ProblemBundle> load_problems(const std::string& path) {
    auto j = read_json(path);
    if (j.is_object() && j.contains("problems")) return problem_set_from_json(j).problems;
    return {problem_from_json(j)};
}

int parse_bugs(const std::string& bugs) {
    if (bugs == "all") return 0;
    if (bugs == "1" || bugs == "2" || bugs == "3") return std::stoi(bugs);
    throw ConfigError("--bugs must be 1, 2, 3 or all");
}

// ---- run --------------------------------------------------------------------

struct RunOptions {
    std::string dataset;
    std::string provider = "http";
    std::string student = "simulated";
    std::string bugs = "all";
    std::string config;
    std::string out = "transcripts";
    std::string templates;
    int jobs = 1;
};

int cmd_run(const RunOptions& o) {
    auto config = FileConfig::load(o.config);
    auto spec = ProviderSpec::parse(o.provider);
    auto session_config = config.session();
    auto problems = filter_by_bugs(load_problem_set(o.dataset).problems, parse_bugs(o.bugs));
    if (problems.empty()) {
        std::cerr << "no problems match --bugs " << o.bugs << "\n";
        return kExitDomain;
    }
    const bool scripted = o.student.rfind("scripted:", 0) == 0;
    if (!scripted && o.student != "simulated") throw ConfigError("--student must be simulated or scripted:<file>");
    std::string student_path = scripted ? o.student.substr(9) : std::string{};
    if (scripted && !fs::exists(student_path)) throw ConfigError("student script '" + student_path + "' not found");
    if (o.jobs < 1) throw ConfigError("--jobs must be at least 1");

    // Built up front so a missing API key or broken template fails before any work.
    std::shared_ptr<Runtime> shared;
    if (!spec.per_problem()) {
        shared = std::make_shared<Runtime>(make_provider(spec, config, {}), config, o.templates, spec.mock);
    }
    // A single ordered mock script cannot be shared between threads deterministically.
    int jobs = (spec.mock && !spec.per_problem()) ? 1 : o.jobs;

    fs::create_directories(o.out);
    std::vector<std::optional<Transcript>> done(problems.size());
    std::vector<std::string> failures(problems.size());
    std::atomic<std::size_t> next{0};
    std::mutex print_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < problems.size(); i = next++) {
            const auto& problem = problems[i];
            try {
                auto rt = shared ? shared
                                 : std::make_shared<Runtime>(make_provider(spec, config, problem.id), config,
                                                             o.templates, spec.mock);
                std::unique_ptr<StudentDriver> student;
                if (scripted) {
                    auto path = fs::is_directory(student_path) ? (fs::path(student_path) / (problem.id + ".json")).string()
                                                               : student_path;
                    student = std::make_unique<ScriptedStudent>(ScriptedStudent::load(path));
                } else {
                    student = std::make_unique<SimulatedStudent>(*rt->agents);
                }
                auto t = run_to_completion(*rt->tutor, problem, *student, session_config, problem.id);
                write_text(fs::path(o.out) / (problem.id + ".json"), transcript_to_string(t));
                done[i] = std::move(t);
                std::lock_guard lock(print_mutex);
                std::cout << problem.id << ": " << to_string(*done[i]->final_state->termination_reason) << ", "
                          << done[i]->final_state->total_turns << " turns\n";
            } catch (const SessionAborted& e) {
                write_text(fs::path(o.out) / (problem.id + ".partial.json"), transcript_to_string(e.partial()));
                failures[i] = e.what();
            } catch (const Error& e) {
                failures[i] = e.what();
            }
            if (!failures[i].empty()) {
                std::lock_guard lock(print_mutex);
                std::cout << problem.id << ": FAILED: " << failures[i] << "\n";
            }
        }
    };
    std::vector<std::thread> threads;
    for (int t = 1; t < jobs; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    std::vector<Transcript> completed;
    for (auto& t : done) {
        if (t) completed.push_back(*t);
    }
    int failed = static_cast<int>(problems.size() - completed.size());
    if (!completed.empty()) {
        auto report = build_report(completed, {}, OracleChoice::transcript);
        const auto& all = report.by_bug_count.back();
        std::printf("problems: %zu  completed: %zu  failed: %d\nsuccess: %.2f%%  avg turns: %.2f\n",
                    problems.size(), completed.size(), failed, all.success, all.avg_turns);
    } else {
        std::printf("problems: %zu  completed: 0  failed: %d\n", problems.size(), failed);
    }
    return failed == 0 ? kExitOk : kExitDomain;
}

// ---- interact -----------------------------------------------------------------

std::atomic<bool> g_interrupted{false};

int cmd_interact(const std::string& problem_path, const std::string& problem_id, const std::string& provider,
                 const std::string& config_path, const std::string& templates, std::string out) {
    auto config = FileConfig::load(config_path);
    auto spec = ProviderSpec::parse(provider);
    auto problems = load_problems(problem_path);
    const ProblemBundle* problem = &problems.front();
    if (!problem_id.empty()) {
        auto it = std::find_if(problems.begin(), problems.end(), [&](const auto& p) { return p.id == problem_id; });
        if (it == problems.end()) throw ConfigError("no problem '" + problem_id + "' in " + problem_path);
        problem = &*it;
    }
    if (out.empty()) out = problem->id + ".transcript.json";
    Runtime rt(make_provider(spec, config, problem->id), config, templates, spec.mock);

    std::signal(SIGINT, [](int) { g_interrupted = true; });
    std::cout << "Problem:\n" << problem->problem_statement << "\n\nYour code:\n" << problem->buggy_code << "\n\n";

    SessionState session;
    auto save = [&] {
        write_text(out, transcript_to_string(make_transcript(session, rt.catalog.hash(), rt.gateway->provider_id())));
    };
    auto started = rt.tutor->start_session(problem->id, *problem, config.session());
    session = started.state;
    save();
    InstructorAction action = started.action;

    while (session.status != SessionStatus::terminated) {
        if (action.kind == ActionKind::bug_fix_request) {
            std::cout << "\nTutor: " << action.text << "\n"
                      << "Enter one fix per line (blank line to finish, nothing for None).\n";
            std::vector<std::string> fixes;
            std::string line;
            bool eof = false;
            for (int n = 1;; ++n) {
                std::cout << "  fix " << n << "> " << std::flush;
                if (!std::getline(std::cin, line) || g_interrupted) {
                    eof = true;
                    break;
                }
                if (line.find_first_not_of(" \t\r") == std::string::npos) break;
                fixes.push_back(line);
            }
            if (eof) break;
            auto result = rt.tutor->submit_bug_fixes(session, BugFixList::from(fixes), fixes.empty() ? "None" : "");
            session = result.state;
            action = result.action;
        } else {
            std::cout << "\nTutor: " << action.text << "\nYou> " << std::flush;
            std::string line;
            do {
                if (!std::getline(std::cin, line) || g_interrupted) {
                    line.clear();
                    break;
                }
            } while (line.find_first_not_of(" \t\r") == std::string::npos);
            if (line.empty()) break;
            auto result = rt.tutor->step(session, line);
            session = result.state;
            action = result.action;
        }
        save();
    }
    save();
    if (session.status != SessionStatus::terminated) {
        std::cout << "\nSession interrupted; partial transcript saved to " << out << "\n";
        return kExitDomain;
    }
    std::cout << "\nTutor: " << action.text << "\n\nSession finished (" << to_string(*session.termination_reason)
              << ", " << session.total_turns << " turns). Transcript saved to " << out << "\n";
    return kExitOk;
}

// ---- replay -----------------------------------------------------------------

void print_conversation(const Transcript& t) {
    std::cout << "session " << t.header.session_id << "  problem " << t.header.problem_id << "\n";
    for (const auto& e : t.events) {
        std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, StateEstimated>) {
                    for (std::size_t i = 0; i < p.tasks.size(); ++i) {
                        std::cout << "  task " << i + 1 << ": " << p.tasks[i] << "\n";
                    }
                } else if constexpr (std::is_same_v<T, QuestionAsked>) {
                    std::cout << "Instructor [" << to_string(p.node.kind) << ", level " << p.node.level
                              << "]: " << p.node.text << "\n";
                } else if constexpr (std::is_same_v<T, TeachingDelivered>) {
                    std::cout << "Instructor [teach, level " << p.node.level << "]: " << p.node.text << "\n";
                } else if constexpr (std::is_same_v<T, ResponseReceived>) {
                    std::cout << "Student: " << p.text << "\n";
                } else if constexpr (std::is_same_v<T, ResponseVerified>) {
                    std::cout << "  (" << (p.correct ? "correct" : "incorrect") << ")\n";
                } else if constexpr (std::is_same_v<T, TaskResolved>) {
                    std::cout << "  task " << p.index << " resolved\n";
                } else if constexpr (std::is_same_v<T, BugFixesCollected>) {
                    std::cout << "Student fixes:" << (p.fixes.empty() ? " none" : "") << "\n";
                    for (const auto& f : p.fixes.fixes) std::cout << "  - " << f << "\n";
                } else if constexpr (std::is_same_v<T, ResolutionChecked>) {
                    std::cout << "  fixes cover all bugs: " << (p.verdict.all_covered ? "yes" : "no") << "\n";
                } else if constexpr (std::is_same_v<T, Terminated>) {
                    std::cout << "-- terminated: " << to_string(p.reason) << "\n";
                    if (!p.summary.empty()) std::cout << p.summary << "\n";
                }
            },
            e.payload);
    }
}

int cmd_replay(const std::string& path, const std::string& format) {
    if (format != "text" && format != "events") throw ConfigError("--format must be text or events");
    auto body = read_text(path);
    try {
        auto t = transcript_from_string(body);
        if (format == "events") {
            for (const auto& e : t.events) {
                Json j = e;
                std::cout << e.sequence << " " << e.timestamp << " " << event_type_name(e.payload) << " "
                          << j["payload"].dump() << "\n";
            }
        } else {
            print_conversation(t);
        }
        auto state = resume(t);
        if (t.final_state && state_snapshot_json(state) != state_snapshot_json(*t.final_state)) {
            std::cout << "replay: FAIL: replayed state differs from the recorded final state\n";
            return kExitDomain;
        }
        std::cout << "replay: PASS (" << t.events.size() << " events)\n";
        return kExitOk;
    } catch (const CorruptTranscriptError& e) {
        std::cout << "replay: FAIL: " << e.what() << "\n";
        return kExitDomain;
    }
}

// ---- validate -----------------------------------------------------------------

int cmd_validate(const std::string& path, bool single_bug) {
    ProblemSetFile set;
    try {
        set = single_bug ? load_single_bug_benchmark(path) : load_problem_set(path);
    } catch (const SchemaError& e) {
        std::cout << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const AdapterError& e) {
        std::cout << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    auto findings = validate(set);
    for (const auto& f : findings) {
        std::cout << to_string(f.severity) << ": " << f.problem_id << ": " << f.message << "\n";
    }
    std::cout << set.problems.size() << " problems, " << findings.size() << " findings\n";
    return has_errors(findings) ? kExitDomain : kExitOk;
}

// ---- eval -------------------------------------------------------------------

std::vector<Ranking> load_rankings(const std::string& path) {
    auto j = read_json(path);
    std::vector<Ranking> out;
    try {
        for (const auto& problem : j.at("rankings")) {
            Ranking r;
            if (problem.is_object()) {
                for (const auto& [method, rank] : problem.items()) r.emplace_back(method, rank.get<int>());
            } else {
                for (const auto& pair : problem) r.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<int>());
            }
            out.push_back(std::move(r));
        }
    } catch (const Json::exception& e) {
        throw SchemaError("rankings", e.what());
    }
    return out;
}

int cmd_eval(const std::string& dir, const std::string& annotations_path, const std::string& rankings_path,
             const std::string& out, const std::string& oracle_name) {
    if (oracle_name != "normalized" && oracle_name != "transcript") {
        throw ConfigError("--oracle must be normalized or transcript");
    }
    if (!fs::is_directory(dir)) throw ConfigError("transcript directory '" + dir + "' not found");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        auto name = e.path().filename().string();
        if (e.is_regular_file() && e.path().extension() == ".json" && name.find(".partial.") == std::string::npos) {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "no transcripts in " << dir << "\n";
        return kExitDomain;
    }
    std::vector<Transcript> transcripts;
    for (const auto& f : files) transcripts.push_back(transcript_from_string(read_text(f.string())));
    auto annotations = annotations_path.empty() ? std::vector<AnnotationRecord>{} : load_annotations(annotations_path);
    auto report = build_report(transcripts, annotations,
                               oracle_name == "transcript" ? OracleChoice::transcript : OracleChoice::normalized);
    Json j = report_to_json(report);
    auto table = report_table(report);
    if (!rankings_path.empty()) {
        Json prefs = Json::array();
        table += "\nside by side\n";
        for (const auto& p : side_by_side(load_rankings(rankings_path))) {
            prefs.push_back({{"a", p.a}, {"b", p.b}, {"percent", p.percent}, {"problems", p.problems}});
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s over %s: %.2f%% (%d problems)\n", p.a.c_str(), p.b.c_str(), p.percent,
                          p.problems);
            table += buf;
        }
        j["side_by_side"] = prefs;
    }
    fs::create_directories(out);
    write_text(fs::path(out) / "report.json", j.dump(2) + "\n");
    write_text(fs::path(out) / "report.txt", table);
    std::cout << table;
    return kExitOk;
}

// ---- serve ------------------------------------------------------------------

SessionService* g_service = nullptr;

int cmd_serve(const std::string& config_path, const std::string& dataset, const std::string& provider,
              const std::string& templates, std::optional<int> port, const std::string& store,
              const std::string& static_dir, const std::string& host) {
    auto config = FileConfig::load(config_path);
    auto spec = ProviderSpec::parse(provider);
    if (spec.per_problem()) throw ConfigError("serve needs a single mock script, not a directory");
    ServiceConfig sc;
    sc.session_defaults = config.session();
    if (config.raw.contains("service")) sc = ServiceConfig::from_json(config.raw["service"], sc);
    sc.apply_env();
    if (!dataset.empty()) sc.problems = load_problem_set(dataset).problems;
    if (port) sc.port = *port;
    if (!store.empty()) sc.store_dir = store;
    if (!static_dir.empty()) sc.static_dir = static_dir;
    if (!host.empty()) sc.host = host;

    Runtime rt(make_provider(spec, config, {}), config, templates, spec.mock);
    SessionService service(*rt.tutor, sc);
    auto restored = service.restore();
    int bound = service.bind();
    g_service = &service;
    std::signal(SIGINT, [](int) {
        if (g_service) g_service->stop();
    });
    std::signal(SIGTERM, [](int) {
        if (g_service) g_service->stop();
    });
    std::cout << "listening on http://" << sc.host << ":" << bound << " (" << restored << " sessions restored, "
              << sc.problems.size() << " problems)" << std::endl;
    service.listen();
    g_service = nullptr;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Socratic code-debugging tutor"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Tutor every problem in a dataset with a proxy student");
    run_cmd->add_option("--dataset", run.dataset, "Problem set file")->required();
    run_cmd->add_option("--provider", run.provider, "http or mock:<script-file-or-dir>");
    run_cmd->add_option("--student", run.student, "simulated or scripted:<file-or-dir>");
    run_cmd->add_option("--bugs", run.bugs, "1, 2, 3 or all");
    run_cmd->add_option("--config", run.config, "JSON config file");
    run_cmd->add_option("--out", run.out, "Transcript output directory");
    run_cmd->add_option("--templates", run.templates, "Template directory overriding the built-in catalog");
    run_cmd->add_option("--jobs", run.jobs, "Problems to run in parallel");

    std::string problem, problem_id, provider = "http", config, templates, out;
    auto* interact = app.add_subcommand("interact", "Live tutoring session in the terminal");
    interact->add_option("--problem", problem, "Problem bundle or problem set file")->required();
    interact->add_option("--problem-id", problem_id, "Problem to pick from a problem set");
    interact->add_option("--provider", provider, "http or mock:<script>");
    interact->add_option("--config", config, "JSON config file");
    interact->add_option("--templates", templates, "Template directory");
    interact->add_option("--out", out, "Transcript path (default <problem-id>.transcript.json)");

    std::string transcript, format = "text";
    auto* replay_cmd = app.add_subcommand("replay", "Print a transcript and check that it replays");
    replay_cmd->add_option("--transcript", transcript, "Transcript file")->required();
    replay_cmd->add_option("--format", format, "text or events");

    std::string dataset;
    bool single_bug = false;
    auto* validate_cmd = app.add_subcommand("validate", "Check a problem set");
    validate_cmd->add_option("--dataset", dataset, "Problem set file")->required();
    validate_cmd->add_flag("--single-bug", single_bug, "Input uses the single-bug benchmark layout");

    std::string transcripts, annotations, rankings, report_out = "report", oracle = "transcript";
    auto* eval = app.add_subcommand("eval", "Metric report over a directory of transcripts");
    eval->add_option("--transcripts", transcripts, "Transcript directory")->required();
    eval->add_option("--annotations", annotations, "Human annotation file");
    eval->add_option("--rankings", rankings, "Side-by-side ranking file");
    eval->add_option("--out", report_out, "Output directory for report.json and report.txt");
    eval->add_option("--oracle", oracle, "transcript (verifier judgments, default) or normalized (exact text after normalization)");

    std::string serve_dataset, store, static_dir, host;
    std::optional<int> port;
    auto* serve = app.add_subcommand("serve", "HTTP session service");
    serve->add_option("--config", config, "JSON config file");
    serve->add_option("--dataset", serve_dataset, "Problem set offered at /problems");
    serve->add_option("--provider", provider, "http or mock:<script>");
    serve->add_option("--templates", templates, "Template directory");
    serve->add_option("--port", port, "Port (0 picks a free one)");
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--store", store, "Session store directory");
    serve->add_option("--static", static_dir, "Static files served at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run_cmd) return cmd_run(run);
        if (*interact) return cmd_interact(problem, problem_id, provider, config, templates, out);
        if (*replay_cmd) return cmd_replay(transcript, format);
        if (*validate_cmd) return cmd_validate(dataset, single_bug);
        if (*eval) return cmd_eval(transcripts, annotations, rankings, report_out, oracle);
        if (*serve) return cmd_serve(config, serve_dataset, provider, templates, port, store, static_dir, host);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const TemplateError& e) {
        std::cerr << "template error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}
