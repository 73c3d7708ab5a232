#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mrf/cli.hpp"
#include "mrf/error.hpp"
#include "mrf/info.hpp"
#include "mrf/instance.hpp"
#include "mrf/report.hpp"

using namespace mrf;
using nlohmann::json;

namespace {

json minimal_doc() {
    return json::parse(R"({
        "name": "pair",
        "variables": [
            {"name": "A", "alphabet": ["0", "1"]},
            {"name": "B", "alphabet": ["0", "1"]}
        ],
        "edges": [[0, 1]],
        "distribution": {
            "type": "table",
            "entries": [
                {"x": ["0", "0"], "p": "1/2"},
                {"x": ["1", "1"], "p": "1/2"}
            ]
        },
        "lumping": [
            {"vertex": 0, "map": {"0": "a", "1": "a"}}
        ]
    })");
}

ErrorCode code_of(const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::Schema;
}

int run(std::vector<std::string> args) {
    std::vector<const char*> argv{"mrflump"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("instances parse with exact rationals and identity-completed lumpings") {
    Instance inst = parse_instance_json(minimal_doc());
    CHECK(inst.name == "pair");
    CHECK(inst.table().mode() == Mode::Exact);
    CHECK(inst.table().weight_exact(0) == Rat(1, 2));
    REQUIRE(inst.lumping.has_value());
    CHECK(!inst.lumping->injective_at(1));
    CHECK(inst.lumping->injective_at(2));  // unlisted vertex keeps identity
}

TEST_CASE("numeric literals select float mode unless exactness is forced") {
    json doc = minimal_doc();
    doc["distribution"]["entries"][0]["p"] = 0.5;
    Instance inst = parse_instance_json(doc);
    CHECK(inst.table().mode() == Mode::Float);
    Instance forced = parse_instance_json(doc, ParseOptions{.force_exact = true});
    CHECK(forced.table().mode() == Mode::Exact);
    CHECK(forced.table().weight_exact(0) == Rat(1, 2));
}

TEST_CASE("schema violations carry their distinct error codes") {
    json bad_sum = minimal_doc();
    bad_sum["distribution"]["entries"][0]["p"] = "499/1000";
    CHECK(code_of([&] { parse_instance_json(bad_sum); }) == ErrorCode::ProbSum);

    json partial = minimal_doc();
    partial["lumping"][0]["map"].erase("1");
    CHECK(code_of([&] { parse_instance_json(partial); }) == ErrorCode::PartialMap);

    json dangling = minimal_doc();
    dangling["edges"][0][1] = 7;
    CHECK(code_of([&] { parse_instance_json(dangling); }) == ErrorCode::DanglingVertex);

    json no_vars = minimal_doc();
    no_vars.erase("variables");
    CHECK(code_of([&] { parse_instance_json(no_vars); }) == ErrorCode::Schema);

    json dup = minimal_doc();
    dup["distribution"]["entries"][1]["x"] = {"0", "0"};
    CHECK(code_of([&] { parse_instance_json(dup); }) == ErrorCode::Schema);

    json neg_pot = json::parse(R"({
        "name": "g", "variables": [{"name": "A", "alphabet": ["0", "1"]}],
        "edges": [],
        "distribution": {"type": "gibbs", "potentials": [
            {"clique": [0], "table": [{"x": ["0"], "value": "0"}]}
        ]}
    })");
    CHECK(code_of([&] { parse_instance_json(neg_pot); }) ==
          ErrorCode::NonPositivePotential);
}

TEST_CASE("serialization round-trips every bundled fixture") {
    for (const std::string& name : builtin_fixture_names()) {
        Instance inst = builtin_fixture(name);
        Instance back = parse_instance_json(serialize_instance(inst));
        CHECK(back.name == inst.name);
        CHECK(back.graph == inst.graph);
        CHECK(back.alphabet == inst.alphabet);
        CHECK(back.table().same_distribution(inst.table()));
        REQUIRE(back.lumping.has_value());
        for (int v = 1; v <= inst.alphabet.vertex_count(); ++v)
            for (std::size_t x = 0; x < inst.alphabet.cardinality(v); ++x)
                CHECK(back.lumping->preimage(v, back.lumping->map(v, static_cast<int>(x))) ==
                      inst.lumping->preimage(v, inst.lumping->map(v, static_cast<int>(x))));
    }
}

TEST_CASE("unknown fixture names are rejected; the list has seven entries") {
    CHECK(builtin_fixture_names().size() == 7);
    CHECK(code_of([] { builtin_fixture("example9"); }) == ErrorCode::UnknownName);
}

TEST_CASE("the bundled fixture files parse to the built-in instances") {
    for (const std::string& name : builtin_fixture_names()) {
        Instance from_file =
            parse_instance(std::string(MRFLUMP_FIXTURE_DIR) + "/" + name + ".json");
        Instance builtin = builtin_fixture(name);
        CHECK(from_file.name == name);
        CHECK(from_file.graph == builtin.graph);
        CHECK(from_file.table().same_distribution(builtin.table()));
    }
}

TEST_CASE("generated instances are deterministic per seed") {
    for (const char* profile : {"generic", "prop1", "chordal"}) {
        Instance a = random_instance(99, profile);
        Instance b = random_instance(99, profile);
        CHECK(serialize_instance(a).dump() == serialize_instance(b).dump());
        Instance c = random_instance(100, profile);
        CHECK(serialize_instance(a).dump() != serialize_instance(c).dump());
    }
}

TEST_CASE("generator profiles satisfy their structural guarantees") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Instance p1 = random_instance(seed, "prop1");
        CHECK(assign_cliques(*p1.family(), *p1.lumping).ok());
        Instance ch = random_instance(seed, "chordal");
        CHECK(is_chordal(ch.graph).chordal);
        CHECK(ch.graph.is_connected());
    }
    CHECK_THROWS_AS((void)random_instance(1, "nonsense"), Error);
}

TEST_CASE("analysis reports are byte-identical across runs") {
    AnalysisOptions opts;
    std::string first = analysis_report(builtin_fixture("example1"), opts).dump(2);
    std::string second = analysis_report(builtin_fixture("example1"), opts).dump(2);
    CHECK(first == second);

    Instance gen_a = random_instance(4242, "generic");
    Instance gen_b = random_instance(4242, "generic");
    CHECK(analysis_report(gen_a, opts).dump(2) == analysis_report(gen_b, opts).dump(2));
}

TEST_CASE("the command line maps verdicts and errors to exit codes") {
    CHECK(run({"examples"}) == 0);
    CHECK(run({"lump", "--fixture", "example1"}) == 1);   // not lumpable
    CHECK(run({"lump", "--fixture", "example3"}) == 0);
    CHECK(run({"info", "--fixture", "example2"}) == 0);   // preserving
    CHECK(run({"info", "--fixture", "infoloss"}) == 1);
    CHECK(run({"check-mrf", "--fixture", "example4"}) == 0);
    CHECK(run({"check-mrf", "--fixture", "example4", "--graph-check", "1-2"}) == 1);
    CHECK(run({"minimal-graph", "--fixture", "example3"}) == 0);
    CHECK(run({"lump", "--no-such-flag"}) == 2);
    CHECK(run({"lump", "--instance", "/nonexistent.json"}) == 2);
    CHECK(run({"lump", "--instance",
               std::string(MRFLUMP_FIXTURE_DIR) + "/example1.json"}) == 1);
    CHECK(run({"random-suite", "--profile", "prop1", "--seed", "5", "--count", "10"}) == 0);
    CHECK(run({"random-suite", "--profile", "bogus"}) == 2);
}

TEST_CASE("JSON reports written by the CLI are identical across runs") {
    const std::string path_a = "/tmp/mrflump_report_a.json";
    const std::string path_b = "/tmp/mrflump_report_b.json";
    CHECK(run({"lump", "--fixture", "example2", "--json", path_a}) == 1);
    CHECK(run({"lump", "--fixture", "example2", "--json", path_b}) == 1);
    std::string a = slurp(path_a), b = slurp(path_b);
    CHECK(!a.empty());
    CHECK(a == b);
    std::remove(path_a.c_str());
    std::remove(path_b.c_str());
}

TEST_CASE("a single-vertex instance runs the whole pipeline") {
    nlohmann::json doc = nlohmann::json::parse(R"({
        "name": "solo",
        "variables": [{"name": "A", "alphabet": ["0", "1", "2"]}],
        "edges": [],
        "distribution": {"type": "table", "entries": [
            {"x": ["0"], "p": "1/2"}, {"x": ["1"], "p": "1/4"}, {"x": ["2"], "p": "1/4"}
        ]},
        "lumping": [{"vertex": 0, "map": {"0": "a", "1": "b", "2": "b"}}]
    })");
    Instance inst = parse_instance_json(doc);
    CHECK(is_mrf(inst.table(), inst.graph, MrfMethod::Definition).holds);
    LumpabilityReport r =
        check_lumpable(inst.table(), *inst.lumping, inst.graph, {}, {});
    CHECK(r.is_lumpable);
    InfoReport ir = info_report(inst.table(), *inst.lumping, inst.graph);
    CHECK(!ir.preservation.preserving);
    CHECK(minimal_graphs(inst.table()) == std::vector<Graph>{Graph::empty_graph(1)});
}

TEST_CASE("parse errors from instance files exit with the usage code") {
    const std::string path = "/tmp/mrflump_bad_instance.json";
    {
        std::ofstream out(path);
        out << R"({"name": "bad", "variables": [{"name": "A", "alphabet": ["0","1"]}],
                   "edges": [], "distribution": {"type": "table", "entries": [
                   {"x": ["0"], "p": "1/3"}]}})";
    }
    CHECK(run({"check-mrf", "--instance", path}) == 2);  // probabilities sum to 1/3
    std::remove(path.c_str());
}
