#include "mrf/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "mrf/error.hpp"
#include "mrf/report.hpp"
#include "mrf/suites.hpp"

namespace mrf {

namespace {

bool is_parse_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::Schema:
        case ErrorCode::ProbSum:
        case ErrorCode::NonPositivePotential:
        case ErrorCode::DanglingVertex:
        case ErrorCode::PartialMap:
        case ErrorCode::UnknownName:
            return true;
        default:
            return false;
    }
}

struct CommonArgs {
    std::string instance_path;
    std::string fixture;
    std::string json_path;
    std::string graph_check;
    double tolerance = kDefaultTol;
    bool rational = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_instance) {
    auto* inst = cmd->add_option("--instance", args.instance_path, "instance file (JSON)");
    auto* fix = cmd->add_option("--fixture", args.fixture,
                                "bundled fixture name (example1..example5, infoloss, mc_remark)");
    if (needs_instance) {
        inst->excludes(fix);
        fix->excludes(inst);
    }
    cmd->add_option("--json", args.json_path, "write the machine-readable report here");
    cmd->add_option("--tolerance", args.tolerance, "absolute tolerance in bits/probability");
    cmd->add_flag("--rational", args.rational, "force exact arithmetic on numeric literals");
}

Instance load_instance(const CommonArgs& args) {
    if (!args.fixture.empty()) return builtin_fixture(args.fixture);
    if (args.instance_path.empty())
        fail(ErrorCode::Schema, "an --instance file or --fixture name is required");
    ParseOptions opts;
    opts.force_exact = args.rational;
    return parse_instance(args.instance_path, opts);
}

Graph parse_edge_list(const std::string& text, int n) {
    std::vector<std::pair<int, int>> edges;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        pos = comma == std::string::npos ? text.size() : comma + 1;
        if (item.empty()) continue;
        std::size_t dash = item.find('-');
        if (dash == std::string::npos)
            fail(ErrorCode::Schema, "edge '" + item + "' must look like 1-2");
        try {
            int a = std::stoi(item.substr(0, dash));
            int b = std::stoi(item.substr(dash + 1));
            edges.emplace_back(a, b);
        } catch (const std::exception&) {
            fail(ErrorCode::Schema, "edge '" + item + "' must use 1-based integers");
        }
    }
    return Graph(n, std::move(edges));
}

void emit(const nlohmann::ordered_json& report, const CommonArgs& args,
          std::chrono::steady_clock::time_point started) {
    std::cout << render_human(report);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cout << "  (" << elapsed << " ms)\n";
    if (!args.json_path.empty()) {
        std::ofstream out(args.json_path);
        if (!out) fail(ErrorCode::Schema, "cannot write '" + args.json_path + "'");
        out << report.dump(2) << "\n";
    }
}

int suite_exit(const SuiteResult& r, bool verbose = true) {
    if (verbose) {
        std::cout << r.name << ": " << r.instances << " instances, " << r.fired
                  << " fired, " << r.failures << " failures\n";
        for (const std::string& m : r.messages) std::cout << "    " << m << "\n";
    }
    return r.pass() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"exact lumpability and information-preservation analysis for "
                 "discrete Markov random fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    CommonArgs args;

    auto* check = app.add_subcommand("check-mrf", "is the instance an MRF on its graph?");
    add_common(check, args, true);
    check->add_option("--graph-check", args.graph_check,
                      "check against this edge list (e.g. \"1-2,2-3\") instead");

    auto* lump_cmd = app.add_subcommand("lump", "lumpability analysis (needs a lumping)");
    add_common(lump_cmd, args, true);

    auto* minimal = app.add_subcommand("minimal-graph",
                                       "inclusion-minimal graphs for the instance distribution");
    add_common(minimal, args, true);

    auto* info_cmd = app.add_subcommand("info", "information-preservation analysis");
    add_common(info_cmd, args, true);

    auto* examples = app.add_subcommand("examples", "run every bundled fixture and "
                                                    "assert its documented verdicts");
    std::string examples_json;
    examples->add_option("--json", examples_json, "write all fixture reports here");

    auto* random = app.add_subcommand("random-suite", "seeded property suites");
    std::uint64_t seed = 1;
    int count = 50;
    std::string profile = "generic";
    std::string random_json;
    random->add_option("--seed", seed, "base seed");
    random->add_option("--count", count, "instances per suite");
    random->add_option("--profile", profile, "generic | prop1 | chordal");
    random->add_option("--json", random_json, "write the suite summary here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto started = std::chrono::steady_clock::now();
    try {
        if (check->parsed()) {
            Instance inst = load_instance(args);
            AnalysisOptions opts;
            opts.tol = args.tolerance;
            if (!args.graph_check.empty())
                opts.graph_override = parse_edge_list(args.graph_check, inst.graph.vertex_count());
            nlohmann::ordered_json report = analysis_report(inst, opts);
            emit(report, args, started);
            return report.at("mrf").at("holds").get<bool>() ? 0 : 1;
        }
        if (lump_cmd->parsed() || info_cmd->parsed()) {
            Instance inst = load_instance(args);
            if (!inst.lumping)
                fail(ErrorCode::Schema, "this analysis needs a 'lumping' section");
            AnalysisOptions opts;
            opts.tol = args.tolerance;
            nlohmann::ordered_json report = analysis_report(inst, opts);
            emit(report, args, started);
            if (lump_cmd->parsed())
                return report.at("lumpability").at("is_lumpable").get<bool>() ? 0 : 1;
            return report.at("information").at("preserving").get<bool>() ? 0 : 1;
        }
        if (minimal->parsed()) {
            Instance inst = load_instance(args);
            std::vector<Graph> graphs = minimal_graphs(inst.table(), args.tolerance);
            nlohmann::ordered_json doc;
            doc["tool"] = kToolName;
            doc["version"] = kToolVersion;
            doc["instance"] = inst.name;
            doc["minimal_graphs"] = nlohmann::ordered_json::array();
            for (const Graph& g : graphs) {
                nlohmann::ordered_json edges = nlohmann::ordered_json::array();
                for (auto [a, b] : g.edges())
                    edges.push_back(nlohmann::ordered_json::array(
                        {inst.variable_names[static_cast<std::size_t>(a - 1)],
                         inst.variable_names[static_cast<std::size_t>(b - 1)]}));
                doc["minimal_graphs"].push_back(std::move(edges));
            }
            std::cout << inst.name << ": " << graphs.size() << " minimal graph(s)\n";
            for (const Graph& g : graphs) {
                std::cout << "  {";
                for (std::size_t k = 0; k < g.edges().size(); ++k) {
                    auto [a, b] = g.edges()[k];
                    std::cout << (k ? "," : "") << "{" << a << "," << b << "}";
                }
                std::cout << "}\n";
            }
            if (!args.json_path.empty()) {
                std::ofstream out(args.json_path);
                if (!out) fail(ErrorCode::Schema, "cannot write '" + args.json_path + "'");
                out << doc.dump(2) << "\n";
            }
            return 0;
        }
        if (examples->parsed()) {
            SuiteResult r = run_examples_suite();
            nlohmann::ordered_json all = nlohmann::ordered_json::array();
            for (const std::string& name : builtin_fixture_names()) {
                Instance inst = builtin_fixture(name);
                AnalysisOptions opts;
                nlohmann::ordered_json report = analysis_report(inst, opts);
                std::cout << render_human(report);
                all.push_back(std::move(report));
            }
            if (!examples_json.empty()) {
                std::ofstream out(examples_json);
                if (!out) fail(ErrorCode::Schema, "cannot write '" + examples_json + "'");
                out << all.dump(2) << "\n";
            }
            return suite_exit(r);
        }
        if (random->parsed()) {
            std::vector<SuiteResult> results;
            if (profile == "generic") {
                results.push_back(run_entropy_condition_suite(seed, count));
                results.push_back(run_preservation_necessary_suite(seed, count));
                results.push_back(run_oracle_suite(seed, count));
            } else if (profile == "prop1") {
                results.push_back(run_lumped_potentials_suite(seed, count));
                results.push_back(run_injective_assignment_suite(seed, count));
                results.push_back(run_canonical_roundtrip_suite(seed, count));
            } else if (profile == "chordal") {
                results.push_back(run_decomposition_suite(seed, count));
                results.push_back(run_preservation_sufficient_suite(seed, count));
            } else {
                fail(ErrorCode::UnknownName, "unknown profile '" + profile + "'");
            }
            int exit_code = 0;
            nlohmann::ordered_json summary;
            summary["tool"] = kToolName;
            summary["version"] = kToolVersion;
            summary["seed"] = seed;
            summary["count"] = count;
            summary["profile"] = profile;
            summary["suites"] = nlohmann::ordered_json::array();
            for (const SuiteResult& r : results) {
                exit_code = std::max(exit_code, suite_exit(r));
                summary["suites"].push_back(nlohmann::ordered_json{{"name", r.name},
                                                                   {"instances", r.instances},
                                                                   {"fired", r.fired},
                                                                   {"failures", r.failures}});
            }
            if (!random_json.empty()) {
                std::ofstream out(random_json);
                if (!out) fail(ErrorCode::Schema, "cannot write '" + random_json + "'");
                out << summary.dump(2) << "\n";
            }
            return exit_code;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_parse_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace mrf
