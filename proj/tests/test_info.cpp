#include <doctest.h>

#include <random>

#include "mrf/error.hpp"
#include "mrf/info.hpp"
#include "mrf/instance.hpp"
#include "mrf/lump.hpp"

using namespace mrf;

TEST_CASE("entropy condition holds trivially under identity lumpings") {
    Instance e4 = builtin_fixture("example4");
    JointTable t = e4.table();
    Prop2Result r = prop2_condition(t, Lumping::identity(e4.alphabet), e4.graph);
    CHECK(r.holds);
    for (double res : r.residuals) CHECK(res == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("entropy condition fails on the composite-symbol fixture at the ends") {
    // X2 contains X1 and X3 outright, so H(Y1|X2) = 0 while H(Y1|Y2) = 1 bit
    Instance e3 = builtin_fixture("example3");
    Prop2Result r = prop2_condition(e3.table(), *e3.lumping, e3.graph);
    CHECK(!r.holds);
    CHECK(r.residuals[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.residuals[1] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.residuals[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("entropy condition fails at vertex 2 of the merged-pair fixture") {
    Instance e5 = builtin_fixture("example5");
    Prop2Result r = prop2_condition(e5.table(), *e5.lumping, e5.graph);
    CHECK(!r.holds);
    CHECK(r.residuals[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.residuals[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    // ... and yet the lumping is lumpable: the verdict gap is real
    JointTable p_y = pushforward(e5.table(), *e5.lumping);
    CHECK(is_mrf(p_y, e5.graph, MrfMethod::Definition).holds);
}

TEST_CASE("non-MRF inputs are rejected by the conditional-entropy analyses") {
    Instance e1 = builtin_fixture("example1");
    JointTable p_y = pushforward(e1.table(), *e1.lumping);
    CHECK_THROWS_AS((void)prop2_condition(p_y, Lumping::identity(p_y.alphabet()),
                                          Graph::path(3)),
                    Error);
    CHECK_THROWS_AS(
        (void)necessary_condition(p_y, Lumping::identity(p_y.alphabet()), Graph::path(3)),
        Error);
}

TEST_CASE("injective singleton-strict assignments equalize the entropies") {
    Instance e4 = builtin_fixture("example4");
    const PotentialFamily& f = *e4.family();
    AssignOutcome outcome = assign_cliques(f, *e4.lumping);
    REQUIRE(outcome.ok());
    REQUIRE(outcome.assignment->injective());
    JointTable t = synthesize_pmf(f);
    CHECK(prop3_check(f, *e4.lumping, *outcome.assignment, t));
    // the equalities themselves
    Prop2Result r = prop2_condition(t, *e4.lumping, e4.graph);
    CHECK(r.holds);
}

TEST_CASE("injective lumpings satisfy the structural hypothesis trivially") {
    Instance e4 = builtin_fixture("example4");
    const PotentialFamily& f = *e4.family();
    Lumping id = Lumping::identity(e4.alphabet);
    AssignOutcome outcome = assign_cliques(f, id);
    REQUIRE(outcome.ok());
    CHECK(outcome.assignment->injective());
    CHECK(prop3_check(f, id, *outcome.assignment, synthesize_pmf(f)));
}

TEST_CASE("a shared strict edge-clique leaves the structural hypothesis unmet") {
    AlphabetSpec a({{"0", "1", "2"}, {"0", "1", "2"}});
    Graph g = Graph::path(2);
    std::map<std::string, std::string> merge{{"0", "0"}, {"1", "1"}, {"2", "0"}};
    Lumping lump = Lumping::from_symbol_maps(a, {merge, merge});
    // strict in both coordinates
    std::vector<Rat> vals;
    for (int x1 = 0; x1 < 3; ++x1)
        for (int x2 = 0; x2 < 3; ++x2) vals.push_back(1 + x1 + 2 * x2);
    std::map<Clique, PotentialTable> pots;
    pots.emplace(Clique{1, 2}, PotentialTable::exact(std::move(vals)));
    PotentialFamily f(g, a, std::move(pots));
    AssignOutcome outcome = assign_cliques(f, lump);
    REQUIRE(outcome.ok());
    CHECK(!outcome.assignment->injective());
    CHECK(!prop3_check(f, lump, *outcome.assignment, synthesize_pmf(f)));
}

TEST_CASE("an injective-C' family with a strict edge is not asserted against") {
    // psi_{1,2} strict in x1 only; C'(1) = {1,2}, C'(2) = {2}: injective but
    // the equalities genuinely fail, so the check must decline.
    AlphabetSpec a({{"0", "1"}, {"0", "1"}});
    Graph g = Graph::path(2);
    std::map<std::string, std::string> merge{{"0", "m"}, {"1", "m"}};
    std::map<std::string, std::string> id{{"0", "0"}, {"1", "1"}};
    Lumping lump = Lumping::from_symbol_maps(a, {merge, id});
    std::map<Clique, PotentialTable> pots;
    pots.emplace(Clique{1, 2}, PotentialTable::exact({Rat(2), Rat(1), Rat(1), Rat(2)}));
    PotentialFamily f(g, a, std::move(pots));
    AssignOutcome outcome = assign_cliques(f, lump);
    REQUIRE(outcome.ok());
    CHECK(outcome.assignment->injective());
    JointTable t = synthesize_pmf(f);
    CHECK(!prop3_check(f, lump, *outcome.assignment, t));
    Prop2Result r = prop2_condition(t, lump, g);
    CHECK(r.residuals[1] > 0.05);  // the gap is genuine, not numerical
}

TEST_CASE("information preservation on the contrasting fixtures") {
    Instance e2 = builtin_fixture("example2");
    PreservationResult p2 = is_information_preserving(e2.table(), *e2.lumping);
    CHECK(p2.preserving);
    CHECK(p2.residual_bits == doctest::Approx(0.0).epsilon(1e-9));

    Instance e1 = builtin_fixture("example1");
    PreservationResult p1 = is_information_preserving(e1.table(), *e1.lumping);
    CHECK(!p1.preserving);
    CHECK(p1.residual_bits > 0.1);

    Instance loss = builtin_fixture("infoloss");
    PreservationResult pl = is_information_preserving(loss.table(), *loss.lumping);
    CHECK(!pl.preserving);
    CHECK(pl.residual_bits == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("necessary residuals vanish on the preserving and copy fixtures") {
    Instance e2 = builtin_fixture("example2");
    for (double r : necessary_condition(e2.table(), *e2.lumping, e2.graph))
        CHECK(r == doctest::Approx(0.0).epsilon(1e-9));

    // the copy fixture loses information yet satisfies the necessary condition
    Instance loss = builtin_fixture("infoloss");
    for (double r : necessary_condition(loss.table(), *loss.lumping, loss.graph))
        CHECK(r == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("erasing an undetermined coordinate shows up in the necessary residuals") {
    // X1 independent of X2, g1 constant: nothing recovers X1
    AlphabetSpec a({{"0", "1"}, {"0", "1"}});
    JointTable t = JointTable::exact(
        a, {Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)});
    std::vector<std::map<std::string, std::string>> maps{
        {{"0", "c"}, {"1", "c"}}, {{"0", "0"}, {"1", "1"}}};
    Lumping lump = Lumping::from_symbol_maps(a, maps);
    std::vector<double> res = necessary_condition(t, lump, Graph::path(2));
    CHECK(res[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("chordal witnesses on the bundled fixtures") {
    Instance e4 = builtin_fixture("example4");
    auto id_witness = sufficient_condition_chordal(
        e4.table(), Lumping::identity(e4.alphabet), e4.graph);
    REQUIRE(id_witness.has_value());
    CHECK(id_witness->permutation == std::vector<int>{1, 2, 3});

    Instance loss = builtin_fixture("infoloss");
    CHECK(!sufficient_condition_chordal(loss.table(), *loss.lumping, loss.graph));

    Instance mc = builtin_fixture("mc_remark");
    auto witness = sufficient_condition_chordal(mc.table(), *mc.lumping, mc.graph);
    REQUIRE(witness.has_value());
    CHECK(witness->permutation == std::vector<int>{1, 2, 3});
}

TEST_CASE("entropy decomposition along elimination orders") {
    Instance e4 = builtin_fixture("example4");
    JointTable t = e4.table();
    double h = entropy(t);
    for (const EliminationOrder& order : mcs_orderings(e4.graph, true))
        CHECK(chordal_entropy_decomposition(t, e4.graph, order) ==
              doctest::Approx(h).epsilon(1e-9));

    // complete graphs reduce to the chain rule
    Instance mc = builtin_fixture("mc_remark");
    JointTable tm = mc.table();
    for (const EliminationOrder& order : mcs_orderings(mc.graph, true))
        CHECK(chordal_entropy_decomposition(tm, mc.graph, order) ==
              doctest::Approx(entropy(tm)).epsilon(1e-9));
}

TEST_CASE("entropy decomposition validates its ordering") {
    Instance e4 = builtin_fixture("example4");
    JointTable t = e4.table();
    EliminationOrder bogus;
    bogus.permutation = {1, 3, 2};  // vertex 3 has no placed neighbors yet
    bogus.prior_neighbors = {{}, {}, {1, 3}};
    CHECK_THROWS_AS((void)chordal_entropy_decomposition(t, e4.graph, bogus), Error);

    EliminationOrder wrong_sets;
    wrong_sets.permutation = {1, 2, 3};
    wrong_sets.prior_neighbors = {{}, {}, {2}};  // A_2 must be {1}
    CHECK_THROWS_AS((void)chordal_entropy_decomposition(t, e4.graph, wrong_sets), Error);
}

TEST_CASE("the conditional-entropy chain is verified and its gaps are real") {
    Instance e1 = builtin_fixture("example1");
    JointTable t = e1.table();
    std::vector<ProofChainTerms> chain = proof_chain_prop2(t, *e1.lumping, e1.graph);
    // the second inequality is strict at vertex 1
    CHECK(chain[0].h_y_given_y_neighbors - chain[0].h_y_given_y_rest > 1e-6);

    // identity lumpings collapse everything to H(X_i|X_Ni)
    std::vector<ProofChainTerms> id_chain =
        proof_chain_prop2(t, Lumping::identity(e1.alphabet), e1.graph);
    for (int i = 1; i <= 3; ++i) {
        double target = conditional_entropy(t, {i}, e1.graph.neighbors(i));
        const ProofChainTerms& c = id_chain[static_cast<std::size_t>(i - 1)];
        CHECK(c.h_y_given_x_neighbors == doctest::Approx(target).epsilon(1e-9));
        CHECK(c.h_y_given_y_rest == doctest::Approx(target).epsilon(1e-9));
        CHECK(c.h_y_given_y_neighbors == doctest::Approx(target).epsilon(1e-9));
    }

    // the composite-symbol fixture collapses at the middle vertex only
    Instance e3 = builtin_fixture("example3");
    std::vector<ProofChainTerms> c3 = proof_chain_prop2(e3.table(), *e3.lumping, e3.graph);
    CHECK(c3[1].h_y_given_x_neighbors == doctest::Approx(c3[1].h_y_given_y_neighbors));
    CHECK(c3[0].h_y_given_y_rest - c3[0].h_y_given_x_neighbors > 0.9);
}

TEST_CASE("preservation cross-check holds on random instances") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 60; ++trial) {
        Instance inst = random_instance(rng(), "generic");
        JointTable t = inst.table();
        PreservationResult p = is_information_preserving(t, *inst.lumping);
        CHECK(p.residual_bits >= -1e-9);
        if (!is_nontrivial(*inst.lumping)) CHECK(p.preserving);
    }
}

TEST_CASE("assembled information report on the stationary-chain fixture") {
    Instance mc = builtin_fixture("mc_remark");
    InfoReport r = info_report(mc.table(), *mc.lumping, mc.graph);
    CHECK(r.input_is_mrf);
    CHECK(r.preservation.preserving);
    CHECK(r.chordal_applicable);
    REQUIRE(r.sufficient_witness.has_value());
    CHECK(r.sufficient_witness->permutation == std::vector<int>{1, 2, 3});
    for (double res : r.necessary_residuals) CHECK(res <= 1e-9);
}
