#include "mrf/suites.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "mrf/error.hpp"
#include "mrf/indexing.hpp"
#include "mrf/info.hpp"

namespace mrf {

namespace {

constexpr double kTol = kDefaultTol;

void report_failure(SuiteResult& r, std::uint64_t seed, const std::string& what) {
    ++r.failures;
    if (r.messages.size() < 10)
        r.messages.push_back("seed " + std::to_string(seed) + ": " + what);
}

// Runs body per instance, translating exceptions into suite failures.
template <typename Body>
void per_instance(SuiteResult& r, std::uint64_t seed, int count, const std::string& profile,
                  const GenLimits& limits, Body&& body) {
    for (int k = 0; k < count; ++k) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(k);
        ++r.instances;
        try {
            body(random_instance(s, profile, limits), s);
        } catch (const std::exception& e) {
            report_failure(r, s, e.what());
        }
    }
}

}  // namespace

SuiteResult run_lumped_potentials_suite(std::uint64_t seed, int count) {
    SuiteResult r;
    r.name = "lumped-potentials";
    per_instance(r, seed, count, "prop1", GenLimits{4, 3}, [&](const Instance& inst,
                                                               std::uint64_t s) {
        const PotentialFamily& f = *inst.family();
        const Lumping& lump = *inst.lumping;
        AssignOutcome outcome = assign_cliques(f, lump);
        if (!outcome.ok()) {
            report_failure(r, s, "clique assignment failed on a one-strict-slot family");
            return;
        }
        PotentialFamily u = lumped_potentials(f, lump, *outcome.assignment);
        JointTable t = synthesize_pmf(f);
        JointTable p_y = pushforward(t, lump);
        Scalar z = partition_function(f);

        // product of U over cliques must equal Z * p_Y with the input Z
        const AlphabetSpec& ycod = lump.codomain();
        std::vector<int> digits(static_cast<std::size_t>(ycod.vertex_count()), 0);
        for (std::size_t idx = 0; idx < ycod.total_configurations();
             ++idx, advance_config(digits, ycod)) {
            Scalar prod = u.product_over_cliques(digits);
            if (prod.exact != z.exact * p_y.weight_exact(idx)) {
                report_failure(r, s, "U product differs from Z * p_Y at index " +
                                         std::to_string(idx));
                return;
            }
        }
        ++r.fired;
        if (!is_mrf(p_y, inst.graph, MrfMethod::Definition, kTol).holds) {
            report_failure(r, s, "pushforward is not an MRF on the input graph");
            return;
        }
        if (entropy(p_y) > entropy(t) + kTol)
            report_failure(r, s, "pushforward gained entropy");
    });
    return r;
}

SuiteResult run_entropy_condition_suite(std::uint64_t seed, int count) {
    SuiteResult r;
    r.name = "entropy-condition";
    per_instance(r, seed, count, "generic", GenLimits{4, 3}, [&](const Instance& inst,
                                                                 std::uint64_t s) {
        JointTable t = inst.table();
        const Lumping& lump = *inst.lumping;
        if (!is_mrf(t, inst.graph, MrfMethod::Definition, kTol).holds) {
            report_failure(r, s, "generator emitted a non-MRF instance");
            return;
        }
        Prop2Result p2 = prop2_condition(t, lump, inst.graph, kTol);
        if (!p2.holds) return;
        ++r.fired;
        JointTable p_y = pushforward(t, lump);
        if (!is_mrf(p_y, inst.graph, MrfMethod::Definition, kTol).holds)
            report_failure(r, s, "entropy condition held but the pushforward is not an MRF");
    });
    return r;
}

SuiteResult run_injective_assignment_suite(std::uint64_t seed, int count) {
    SuiteResult r;
    r.name = "injective-assignment";
    std::uint64_t s = seed;
    int checked = 0;
    int safety = count * 40;
    while (checked < count && safety-- > 0) {
        std::uint64_t current = s++;
        try {
            Instance inst = random_instance(current, "prop1", GenLimits{4, 3});
            const PotentialFamily& f = *inst.family();
            const Lumping& lump = *inst.lumping;
            AssignOutcome outcome = assign_cliques(f, lump);
            if (!outcome.ok()) {
                ++r.instances;
                report_failure(r, current, "clique assignment failed");
                continue;
            }
            if (!outcome.assignment->injective()) continue;
            JointTable t = synthesize_pmf(f);
            if (!prop3_check(f, lump, *outcome.assignment, t, kTol))
                continue;  // a multi-vertex clique is strict; hypothesis not met
            ++r.instances;
            ++checked;
            ++r.fired;
        } catch (const std::exception& e) {
            ++r.instances;
            report_failure(r, current, e.what());
        }
    }
    if (checked < count) report_failure(r, s, "could not collect enough injective instances");
    return r;
}

SuiteResult run_preservation_necessary_suite(std::uint64_t seed, int count) {
    SuiteResult r;
    r.name = "preservation-necessary";
    per_instance(r, seed, count, "generic", GenLimits{4, 3}, [&](const Instance& inst,
                                                                 std::uint64_t s) {
        JointTable t = inst.table();
        const Lumping& lump = *inst.lumping;
        PreservationResult ip = is_information_preserving(t, lump, kTol);
        if (ip.residual_bits < -kTol) {
            report_failure(r, s, "negative information loss");
            return;
        }
        if (!ip.preserving) return;
        ++r.fired;
        for (double res : necessary_condition(t, lump, inst.graph, kTol)) {
            if (res > kTol) {
                report_failure(r, s, "preserving lumping with H(X_i|Y_i,X_Ni) = " +
                                         format_real(res));
                return;
            }
        }
    });
    return r;
}

SuiteResult run_preservation_sufficient_suite(std::uint64_t seed, int count) {
    SuiteResult r;
    r.name = "preservation-sufficient";
    per_instance(r, seed, count, "chordal", GenLimits{5, 3}, [&](const Instance& inst,
                                                                 std::uint64_t s) {
        JointTable t = inst.table();
        const Lumping& lump = *inst.lumping;
        auto witness = sufficient_condition_chordal(t, lump, inst.graph, kTol);
        if (!witness) return;
        ++r.fired;
        PreservationResult ip = is_information_preserving(t, lump, kTol);
        if (ip.residual_bits > kTol)
            report_failure(r, s, "witness found but H(X|Y) = " + format_real(ip.residual_bits));
    });
    return r;
}

SuiteResult run_decomposition_suite(std::uint64_t seed, int count) {
    SuiteResult r;
    r.name = "chordal-decomposition";
    per_instance(r, seed, count, "chordal", GenLimits{6, 3}, [&](const Instance& inst,
                                                                 std::uint64_t s) {
        JointTable t = inst.table();
        double h = entropy(t);
        bool any = false;
        for (const EliminationOrder& order : mcs_orderings(inst.graph, true)) {
            any = true;
            double sum = chordal_entropy_decomposition(t, inst.graph, order, kTol);
            if (std::abs(sum - h) > kTol) {
                report_failure(r, s, "decomposition off by " + format_real(sum - h));
                return;
            }
        }
        if (!any) {
            report_failure(r, s, "no MCS orderings produced");
            return;
        }
        ++r.fired;
    });
    return r;
}

SuiteResult run_canonical_roundtrip_suite(std::uint64_t seed, int count) {
    SuiteResult r;
    r.name = "hammersley-clifford";
    per_instance(r, seed, count, "prop1", GenLimits{4, 3}, [&](const Instance& inst,
                                                               std::uint64_t s) {
        JointTable t = synthesize_pmf(*inst.family());
        PotentialFamily fitted = fit_canonical_potentials(t, inst.graph);
        if (!synthesize_pmf(fitted).same_distribution(t, kTol)) {
            report_failure(r, s, "canonical fit did not reproduce the table");
            return;
        }
        ++r.fired;

        // error path: drop one coupled edge and refit
        std::mt19937_64 pick(s);
        const auto& edges = inst.graph.edges();
        const std::pair<int, int> dropped = edges[pick() % edges.size()];
        const int ei = dropped.first;
        const int ej = dropped.second;
        std::map<Clique, PotentialTable> pots;
        for (int v = 1; v <= inst.graph.vertex_count(); ++v) {
            std::vector<Rat> vals(inst.alphabet.cardinality(v));
            for (std::size_t k = 0; k < vals.size(); ++k)
                vals[k] = 1 + static_cast<int>((pick() % 5));
            pots.emplace(Clique{v}, PotentialTable::exact(std::move(vals)));
        }
        {
            std::vector<Rat> vals(inst.alphabet.cardinality(ei) * inst.alphabet.cardinality(ej));
            AlphabetSpec sub = inst.alphabet.restrict_to({ei, ej});
            std::vector<int> local(2, 0);
            for (std::size_t k = 0; k < vals.size(); ++k, advance_config(local, sub))
                vals[k] = local[0] == local[1] ? 2 : 1;
            pots.emplace(Clique{ei, ej}, PotentialTable::exact(std::move(vals)));
        }
        PotentialFamily coupled(inst.graph, inst.alphabet, std::move(pots));
        JointTable tc = synthesize_pmf(coupled);
        std::vector<std::pair<int, int>> remaining;
        for (auto [x, y] : edges)
            if (!(x == ei && y == ej)) remaining.emplace_back(x, y);
        Graph g_minus(inst.graph.vertex_count(), remaining);
        if (is_mrf(tc, g_minus, MrfMethod::Definition, kTol).holds) {
            report_failure(r, s, "table stayed an MRF after dropping a coupled edge");
            return;
        }
        try {
            fit_canonical_potentials(tc, g_minus);
            report_failure(r, s, "canonical fit accepted a non-MRF graph");
        } catch (const NotMrfError& e) {
            if (e.offending_set() != std::vector<int>{ei, ej})
                report_failure(r, s, "unexpected offending set");
        }
    });
    return r;
}

SuiteResult run_oracle_suite(std::uint64_t seed, int count) {
    SuiteResult r;
    r.name = "oracle-agreement";
    per_instance(r, seed, count, "generic", GenLimits{4, 3}, [&](const Instance& inst,
                                                                 std::uint64_t s) {
        JointTable t = inst.table();
        // exercise float mode on half the instances
        if (s % 2 == 0) t = t.to_float();
        std::mt19937_64 pick(s * 7919 + 1);
        std::vector<std::pair<int, int>> edges;
        for (int i = 1; i <= inst.graph.vertex_count(); ++i)
            for (int j = i + 1; j <= inst.graph.vertex_count(); ++j)
                if (pick() % 2) edges.emplace_back(i, j);
        Graph g(inst.graph.vertex_count(), edges);
        MrfVerdict by_def = is_mrf(t, g, MrfMethod::Definition, kTol);
        MrfVerdict by_ent = is_mrf(t, g, MrfMethod::Entropy, kTol);
        if (by_def.holds != by_ent.holds) {
            report_failure(r, s, "definitional and entropy checks disagree");
            return;
        }
        ++r.fired;
    });
    return r;
}

namespace {

void expect(SuiteResult& r, const std::string& fixture, bool condition, const std::string& what) {
    if (!condition) {
        ++r.failures;
        r.messages.push_back(fixture + ": " + what);
    }
}

}  // namespace

SuiteResult run_examples_suite() {
    SuiteResult r;
    r.name = "examples";

    struct Expected {
        const char* name;
        bool lumpable;
        bool preserving;
    };
    // example4/example5/infoloss/mc_remark carry extra assertions below
    const Expected table[] = {
        {"example1", false, false}, {"example2", false, true}, {"example3", true, true},
        {"example4", true, false},  {"example5", true, true},  {"infoloss", true, false},
        {"mc_remark", true, true},
    };

    for (const Expected& e : table) {
        ++r.instances;
        try {
            Instance inst = builtin_fixture(e.name);
            JointTable t = inst.table();
            const Lumping& lump = *inst.lumping;
            std::optional<PotentialFamily> family;
            if (inst.family()) family = *inst.family();

            LumpOptions opts;
            opts.want_minimal_graphs = true;
            LumpabilityReport lr = check_lumpable(t, lump, inst.graph, family, opts);
            InfoReport ir = info_report(t, lump, inst.graph);

            expect(r, e.name, lr.input_mrf.holds, "input table must be an MRF on its graph");
            expect(r, e.name, lr.is_lumpable == e.lumpable, "lumpability verdict mismatch");
            expect(r, e.name, ir.preservation.preserving == e.preserving,
                   "preservation verdict mismatch");
            ++r.fired;

            const std::vector<Graph>& minimal = *lr.minimal_graphs;
            if (std::string(e.name) == "example1") {
                expect(r, e.name, minimal.size() == 1 && minimal[0] == Graph::complete(3),
                       "minimal graph must be the complete triangle");
                expect(r, e.name, lr.certificate == Certificate::None,
                       "no certificate may fire");
            } else if (std::string(e.name) == "example2") {
                Graph expected(3, {{1, 3}});
                expect(r, e.name, minimal.size() == 1 && minimal[0] == expected,
                       "minimal graph must be {{1,3}}");
            } else if (std::string(e.name) == "example3") {
                expect(r, e.name, minimal.size() == 1 && minimal[0] == Graph::empty_graph(3),
                       "minimal graph must be empty");
            } else if (std::string(e.name) == "example4") {
                expect(r, e.name, lr.certificate == Certificate::Prop1,
                       "the one-strict-clique certificate must fire");
                AssignOutcome rewritten = assign_cliques(example4_rewritten_family(), lump);
                expect(r, e.name, !rewritten.ok(), "rewritten family must fail assignment");
                if (!rewritten.ok()) {
                    expect(r, e.name,
                           rewritten.conflicts.size() == 1 && rewritten.conflicts[0].vertex == 2 &&
                               rewritten.conflicts[0].strict_cliques ==
                                   std::vector<Clique>{{1, 2}, {2, 3}},
                           "conflict must name vertex 2 with both edges");
                }
                expect(r, e.name,
                       synthesize_pmf(example4_rewritten_family()).same_distribution(t, kTol),
                       "rewritten family must represent the same distribution");
            } else if (std::string(e.name) == "example5") {
                expect(r, e.name, lr.certificate == Certificate::None,
                       "lumpable without any certificate");
                expect(r, e.name, !ir.prop2_holds, "entropy condition must fail");
            } else if (std::string(e.name) == "infoloss") {
                bool necessary_ok = true;
                for (double res : ir.necessary_residuals) necessary_ok &= res <= kTol;
                expect(r, e.name, necessary_ok, "necessary condition must hold");
                expect(r, e.name, ir.chordal_applicable && !ir.sufficient_witness,
                       "no elimination ordering may witness preservation");
                expect(r, e.name, mcs_orderings(inst.graph, true).size() == 2,
                       "both orderings must be examined");
            } else if (std::string(e.name) == "mc_remark") {
                expect(r, e.name,
                       ir.sufficient_witness &&
                           ir.sufficient_witness->permutation == std::vector<int>{1, 2, 3},
                       "ordering (1,2,3) must witness preservation");
            }
        } catch (const std::exception& ex) {
            ++r.failures;
            r.messages.push_back(std::string(e.name) + ": " + ex.what());
        }
    }
    return r;
}

}  // namespace mrf
