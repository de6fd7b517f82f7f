#include "vcsp/generators.hpp"
#include "vcsp/io.hpp"
#include "vcsp/transform.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace vcsp;

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stoi(item));
    }
    return values;
}

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (int v : values) out += (out.empty() ? "" : ",") + std::to_string(v);
    return out;
}

// Resolves --languages names against the built-ins and the document's
// finite-explicit tables.
LanguageFamily resolve_family(const std::string& list, const InstanceDocument& doc) {
    std::vector<Language> languages;
    std::stringstream stream(list);
    std::string name;
    while (std::getline(stream, name, ',')) {
        if (name.empty()) continue;
        if (name == "min_closed_crisp") {
            languages.push_back(Language::min_closed_crisp(doc.instance.domain_size()));
        } else if (name == "submodular_boolean") {
            if (doc.instance.domain_size() != 2)
                throw Error("submodular_boolean needs a boolean domain");
            languages.push_back(Language::submodular_boolean());
        } else {
            bool found = false;
            for (const Language& g : doc.languages) {
                if (g.name() == name) {
                    languages.push_back(g);
                    found = true;
                    break;
                }
            }
            if (!found) throw Error("unknown language '" + name + "'");
        }
    }
    return LanguageFamily(std::move(languages));
}

struct Options {
    std::string instance_path;
    int k = 0;
    std::string languages = "min_closed_crisp,submodular_boolean";
    bool scattered = false;
    std::string mode = "exhaustive";
    std::uint64_t seed = 0;
    std::string out_path;
    std::string report_path;
    std::string backdoor_list;
    std::string kind;
    GenParams gen;
};

std::string assignment_line(const PartialAssignment& assignment, int n) {
    std::string out = "assignment";
    for (int v = 0; v < n; ++v) out += " " + std::to_string(assignment.value_of(v));
    return out;
}

std::vector<int> assignment_values(const PartialAssignment& assignment, int n) {
    std::vector<int> values;
    for (int v = 0; v < n; ++v) values.push_back(assignment.value_of(v));
    return values;
}

class ReportScope {
public:
    ReportScope(const Options& options, std::string command)
        : options_(options), start_(std::chrono::steady_clock::now()) {
        report_.command = std::move(command);
        report_.status = "ok";
    }

    RunReport& report() { return report_; }

    void finish() {
        if (options_.report_path.empty()) return;
        auto elapsed = std::chrono::steady_clock::now() - start_;
        report_.wall_time_ms =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();
        write_output(options_.report_path, emit_report(report_));
    }

private:
    const Options& options_;
    std::chrono::steady_clock::time_point start_;
    RunReport report_;
};

int run_solve(const Options& options) {
    InstanceDocument doc = parse_instance(read_file(options.instance_path));
    ReportScope scope(options, "solve");
    scope.report().parameters["mode"] = options.mode;
    Solution solution;
    if (options.mode == "exhaustive") {
        solution = brute_force_solve(doc.instance);
    } else if (options.mode == "scattered") {
        solution = solve_scattered(doc.instance, resolve_family(options.languages, doc));
    } else if (options.mode == "min_closed") {
        solution = solve_min_closed(doc.instance);
    } else if (options.mode == "submodular") {
        solution = solve_submodular_boolean(doc.instance);
    } else {
        throw CLI::ValidationError("--mode", "unknown solve mode '" + options.mode + "'");
    }
    std::cout << "cost " << solution.cost.str() << "\n"
              << assignment_line(solution.assignment, doc.instance.num_variables()) << "\n";
    scope.report().cost = solution.cost.str();
    scope.report().assignment = assignment_values(solution.assignment, doc.instance.num_variables());
    scope.finish();
    return kExitOk;
}

int run_detect(const Options& options) {
    InstanceDocument doc = parse_instance(read_file(options.instance_path));
    LanguageFamily family = resolve_family(options.languages, doc);
    if (options.mode == "branching" && options.scattered)
        throw CLI::ValidationError("--mode", "branching detection handles union targets only");
    ReportScope scope(options, "detect");
    scope.report().parameters["k"] = std::to_string(options.k);
    scope.report().parameters["mode"] = options.mode;
    scope.report().parameters["scattered"] = options.scattered ? "true" : "false";
    SearchStats stats;
    std::optional<std::vector<int>> found;
    if (options.mode == "branching") {
        found = detect_backdoor_branching(doc.instance, options.k, family, &stats);
    } else if (options.mode == "exhaustive") {
        found = detect_backdoor_exhaustive(doc.instance, options.k, family, options.scattered,
                                           kDefaultEnumerationBudget, &stats);
    } else {
        throw CLI::ValidationError("--mode", "unknown detect mode '" + options.mode + "'");
    }
    scope.report().stats = stats;
    if (!found) {
        std::cout << "NO\n";
        scope.report().status = "no";
        scope.finish();
        return kExitNo;
    }
    std::cout << "backdoor [" << join_ints(*found) << "]\n"
              << "nodes_visited " << stats.nodes_visited << "\n"
              << "assignments_checked " << stats.assignments_checked << "\n";
    scope.report().backdoor = *found;
    scope.finish();
    return kExitOk;
}

int run_verify(const Options& options) {
    InstanceDocument doc = parse_instance(read_file(options.instance_path));
    LanguageFamily family = resolve_family(options.languages, doc);
    std::vector<int> candidate = parse_int_list(options.backdoor_list);
    ReportScope scope(options, "verify");
    scope.report().parameters["backdoor"] = options.backdoor_list;
    scope.report().parameters["scattered"] = options.scattered ? "true" : "false";
    Backdoor verified = verify_backdoor(doc.instance, candidate, family, options.scattered);
    std::cout << (verified.verified ? "backdoor verified\n" : "not a backdoor\n");
    scope.report().status = verified.verified ? "ok" : "no";
    scope.report().backdoor = verified.variables;
    scope.finish();
    return verified.verified ? kExitOk : kExitNo;
}

// Emits the finitized instance with its languages; the transformed document
// round-trips through the ordinary format.
int run_finitize(const Options& options) {
    InstanceDocument doc = parse_instance(read_file(options.instance_path));
    LanguageFamily family = resolve_family(options.languages, doc);
    ReportScope scope(options, "finitize");
    scope.report().parameters["k"] = std::to_string(options.k);
    auto finitized = finitize(doc.instance, family, options.k);
    if (!finitized) {
        std::cout << "NO\n";
        scope.report().status = "no";
        scope.finish();
        return kExitNo;
    }
    InstanceDocument out(finitized->instance);
    out.languages = finitized->languages;
    out.metadata["transform"] = "finitize";
    out.metadata["k"] = std::to_string(options.k);
    out.metadata["type_count"] = std::to_string(finitized->type_count);
    write_output(options.out_path, emit_instance(out));
    scope.finish();
    return kExitOk;
}

int run_to_csp(const Options& options) {
    InstanceDocument doc = parse_instance(read_file(options.instance_path));
    LanguageFamily family = resolve_family(options.languages, doc);
    ReportScope scope(options, "to-csp");
    scope.report().parameters["k"] = std::to_string(options.k);
    auto finitized = finitize(doc.instance, family, options.k);
    if (!finitized) {
        std::cout << "NO\n";
        scope.report().status = "no";
        scope.finish();
        return kExitNo;
    }
    CspReduction csp = vcsp_to_csp(*finitized, family, options.k);
    InstanceDocument out(csp.instance);
    out.languages = csp.languages;
    out.metadata["transform"] = "to-csp";
    out.metadata["k"] = std::to_string(options.k);
    std::string labels;
    for (int value = 0; value < csp.domain.size(); ++value)
        labels += (labels.empty() ? "" : ",") + csp.domain.label(value);
    out.metadata["domain_labels"] = labels;
    for (std::size_t i = 0; i < csp.fresh_variables.size(); ++i)
        out.metadata["fresh_vars_" + std::to_string(i)] = join_ints(csp.fresh_variables[i]);
    write_output(options.out_path, emit_instance(out));
    scope.finish();
    return kExitOk;
}

int run_pipeline(const Options& options) {
    InstanceDocument doc = parse_instance(read_file(options.instance_path));
    LanguageFamily family = resolve_family(options.languages, doc);
    ReportScope scope(options, "pipeline");
    scope.report().parameters["k"] = std::to_string(options.k);
    auto outcome = pipeline_solve(doc.instance, family, options.k);
    if (!outcome) {
        std::cout << "NO\n";
        scope.report().status = "no";
        scope.finish();
        return kExitNo;
    }
    std::cout << "backdoor [" << join_ints(outcome->backdoor) << "]\n"
              << "cost " << outcome->solution.cost.str() << "\n"
              << assignment_line(outcome->solution.assignment, doc.instance.num_variables())
              << "\n";
    scope.report().backdoor = outcome->backdoor;
    scope.report().cost = outcome->solution.cost.str();
    scope.report().assignment =
        assignment_values(outcome->solution.assignment, doc.instance.num_variables());
    scope.report().stats = outcome->detection_stats;
    scope.finish();
    return kExitOk;
}

int run_gen(const Options& options) {
    ReportScope scope(options, "gen");
    scope.report().parameters["kind"] = options.kind;
    scope.report().parameters["seed"] = std::to_string(options.seed);
    InstanceDocument doc = generate(options.kind, options.seed, options.gen);
    write_output(options.out_path, emit_instance(doc));
    scope.finish();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Valued CSP backdoor toolkit"};
    app.require_subcommand(1);
    Options options;

    auto add_common = [&](CLI::App* cmd, bool needs_instance) {
        if (needs_instance)
            cmd->add_option("--instance", options.instance_path, "instance file")->required();
        cmd->add_option("--languages", options.languages,
                        "comma list of language names (built-ins or file-defined)");
        cmd->add_option("--report", options.report_path, "write a JSON run report");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve an instance");
    add_common(solve, true);
    solve->add_option("--mode", options.mode, "exhaustive|scattered|min_closed|submodular");

    CLI::App* detect = app.add_subcommand("detect", "find a backdoor of size <= k");
    add_common(detect, true);
    detect->add_option("--k", options.k, "backdoor size budget")->required();
    detect->add_option("--mode", options.mode, "branching|exhaustive");
    detect->add_option("--scattered", options.scattered, "scattered target class");

    CLI::App* verify = app.add_subcommand("verify", "check a candidate backdoor");
    add_common(verify, true);
    verify->add_option("--backdoor", options.backdoor_list, "comma list of variables")->required();
    verify->add_option("--scattered", options.scattered, "scattered target class");

    CLI::App* finitize_cmd = app.add_subcommand("finitize", "emit the finitized instance");
    add_common(finitize_cmd, true);
    finitize_cmd->add_option("--k", options.k, "backdoor size budget")->required();
    finitize_cmd->add_option("--out", options.out_path, "output path (default stdout)");

    CLI::App* to_csp = app.add_subcommand("to-csp", "emit the crisp CSP reduction");
    add_common(to_csp, true);
    to_csp->add_option("--k", options.k, "backdoor size budget")->required();
    to_csp->add_option("--out", options.out_path, "output path (default stdout)");

    CLI::App* pipeline = app.add_subcommand("pipeline", "detect via the CSP reduction, then solve");
    add_common(pipeline, true);
    pipeline->add_option("--k", options.k, "backdoor size budget")->required();

    CLI::App* gen = app.add_subcommand("gen", "generate an instance");
    gen->add_option("--kind", options.kind,
                    "planted_backdoor|cut_vertex|random_scattered|random_submodular|random_horn")
        ->required();
    gen->add_option("--seed", options.seed, "generator seed");
    gen->add_option("--n", options.gen.n, "variable count");
    gen->add_option("--n1", options.gen.n1, "cut_vertex side 1 size");
    gen->add_option("--n2", options.gen.n2, "cut_vertex side 2 size");
    gen->add_option("--m", options.gen.m, "constraint or component count");
    gen->add_option("--k", options.gen.k, "planted backdoor size");
    gen->add_option("--out", options.out_path, "output path (default stdout)");
    gen->add_option("--report", options.report_path, "write a JSON run report");

    try {
        app.parse(argc, argv);
        if (solve->parsed()) return run_solve(options);
        if (detect->parsed()) return run_detect(options);
        if (verify->parsed()) return run_verify(options);
        if (finitize_cmd->parsed()) return run_finitize(options);
        if (to_csp->parsed()) return run_to_csp(options);
        if (pipeline->parsed()) return run_pipeline(options);
        if (gen->parsed()) return run_gen(options);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
