#include <doctest.h>

#include <cmath>
#include <random>

#include "mrf/error.hpp"
#include "mrf/instance.hpp"
#include "mrf/lump.hpp"

using namespace mrf;

namespace {

AlphabetSpec binary(int n) {
    std::vector<std::string> bit{"0", "1"};
    return AlphabetSpec(
        std::vector<std::vector<std::string>>(static_cast<std::size_t>(n), bit));
}

JointTable uniform_table(const AlphabetSpec& a) {
    std::size_t total = a.total_configurations();
    return JointTable::exact(a, std::vector<Rat>(total, Rat(1, static_cast<long>(total))));
}

}  // namespace

TEST_CASE("alphabet indexing round-trips and orders the last coordinate fastest") {
    AlphabetSpec a({{"a", "b"}, {"x", "y", "z"}});
    CHECK(a.total_configurations() == 6);
    CHECK(a.index_of({0, 0}) == 0);
    CHECK(a.index_of({0, 1}) == 1);
    CHECK(a.index_of({1, 0}) == 3);
    for (std::size_t idx = 0; idx < 6; ++idx) CHECK(a.index_of(a.config_at(idx)) == idx);
    CHECK(a.labels_at(4) == std::vector<std::string>{"b", "y"});
    auto duplicate_symbols = [] {
        return AlphabetSpec(std::vector<std::vector<std::string>>{{"a", "a"}});
    };
    CHECK_THROWS_AS((void)duplicate_symbols(), Error);
}

TEST_CASE("table invariants are enforced") {
    AlphabetSpec a = binary(1);
    CHECK_THROWS_AS(JointTable::exact(a, {Rat(1, 2), Rat(1, 3)}), Error);
    CHECK_THROWS_AS(JointTable::exact(a, {Rat(-1, 2), Rat(3, 2)}), Error);
    CHECK_THROWS_AS(JointTable::dense(a, {0.5, 0.6}), Error);
    CHECK_NOTHROW(JointTable::dense(a, {0.5, 0.5}));
}

TEST_CASE("marginal of the uniform pair is uniform; full set is the identity") {
    JointTable t = uniform_table(binary(2));
    JointTable m = marginal(t, {1});
    CHECK(m.weight_exact(0) == Rat(1, 2));
    CHECK(m.weight_exact(1) == Rat(1, 2));
    JointTable same = marginal(t, {1, 2});
    CHECK(same.same_distribution(t));
    CHECK_THROWS_AS((void)marginal(t, {}), Error);
}

TEST_CASE("the product-form fixture marginalizes to a product over {1,3}") {
    Instance inst = builtin_fixture("example3");
    JointTable t = inst.table();
    JointTable m13 = marginal(t, {1, 3});
    JointTable m1 = marginal(t, {1});
    JointTable m3 = marginal(t, {3});
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x3 = 0; x3 < 2; ++x3)
            CHECK(m13.weight_exact(m13.alphabet().index_of({x1, x3})) ==
                  m1.weight_exact(static_cast<std::size_t>(x1)) *
                      m3.weight_exact(static_cast<std::size_t>(x3)));
}

TEST_CASE("marginalization commutes with restriction") {
    Instance inst = builtin_fixture("example1");
    JointTable t = inst.table();
    // marginal(t, {1,2}) then dropping the second coordinate == marginal(t, {1})
    JointTable m12 = marginal(t, {1, 2});
    JointTable m1_via = marginal(m12, {1});
    CHECK(m1_via.same_distribution(marginal(t, {1})));
}

TEST_CASE("conditional of the lumped first fixture matches the closed form") {
    Instance inst = builtin_fixture("example1");
    JointTable p_y = pushforward(inst.table(), *inst.lumping);
    // p(Y1 = 1 | Y2 = 0) = p/2 with p = 2/5
    JointTable c = conditional(p_y, {1}, {2}, {"0"});
    CHECK(c.weight_exact(1) == Rat(1, 5));
    CHECK(c.weight_as_double(1) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("conditionals degenerate correctly") {
    // independent pair: conditional equals marginal
    JointTable t = uniform_table(binary(2));
    JointTable c = conditional(t, {1}, {2}, {"1"});
    CHECK(c.same_distribution(marginal(t, {1})));

    // deterministic copy: p(X2 = a | X1 = a) = 1
    AlphabetSpec a = binary(2);
    JointTable copy = JointTable::exact(a, {Rat(1, 2), Rat(0), Rat(0), Rat(1, 2)});
    JointTable cc = conditional(copy, {2}, {1}, {"0"});
    CHECK(cc.weight_exact(0) == Rat(1));

    // zero-probability conditioning event
    CHECK_THROWS_AS((void)conditional(copy, {1}, {2}, {"zzz"}), Error);
    JointTable point = JointTable::exact(a, {Rat(1), Rat(0), Rat(0), Rat(0)});
    CHECK_THROWS_AS((void)conditional(point, {2}, {1}, {"1"}), Error);
}

TEST_CASE("entropy values on the named fixtures") {
    CHECK(entropy(uniform_table(binary(1))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(entropy(builtin_fixture("example2").table()) ==
          doctest::Approx(3.0).epsilon(1e-12));
    AlphabetSpec a = binary(1);
    JointTable point = JointTable::exact(a, {Rat(1), Rat(0)});
    CHECK(entropy(point) == doctest::Approx(0.0));
}

TEST_CASE("entropy is bounded by the log alphabet size") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Instance inst = random_instance(rng(), "generic");
        JointTable t = inst.table();
        double bound = 0.0;
        for (int v = 1; v <= t.alphabet().vertex_count(); ++v)
            bound += std::log2(static_cast<double>(t.alphabet().cardinality(v)));
        double h = entropy(t);
        CHECK(h >= -1e-9);
        CHECK(h <= bound + 1e-9);
    }
}

TEST_CASE("conditional entropy identities") {
    AlphabetSpec a = binary(2);
    JointTable copy = JointTable::exact(a, {Rat(1, 2), Rat(0), Rat(0), Rat(1, 2)});
    CHECK(conditional_entropy(copy, {1}, {2}) == doctest::Approx(0.0));

    JointTable indep = uniform_table(binary(2));
    CHECK(conditional_entropy(indep, {1}, {2}) ==
          doctest::Approx(entropy(indep, {1})).epsilon(1e-12));

    // chain rule holds by construction
    Instance inst = builtin_fixture("example1");
    JointTable t = inst.table();
    CHECK(conditional_entropy(t, {1, 3}, {2}) ==
          doctest::Approx(entropy(t) - entropy(t, {2})).epsilon(1e-9));
    CHECK_THROWS_AS((void)conditional_entropy(t, {1}, {1, 2}), Error);
}

TEST_CASE("a Markov-path table built from potentials satisfies H(X3|X1,X2)=H(X3|X2)") {
    Instance inst = builtin_fixture("example4");
    JointTable t = inst.table();
    CHECK(conditional_entropy(t, {3}, {1, 2}) ==
          doctest::Approx(conditional_entropy(t, {3}, {2})).epsilon(1e-9));
}

TEST_CASE("conditioning never raises entropy") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        Instance inst = random_instance(rng(), "generic");
        JointTable t = inst.table();
        int n = t.alphabet().vertex_count();
        if (n < 3) continue;
        CHECK(conditional_entropy(t, {1}, {2, 3}) <= conditional_entropy(t, {1}, {2}) + 1e-9);
    }
}

TEST_CASE("MRF verdicts on the bundled fixtures") {
    // product distribution vs empty graph
    JointTable indep = uniform_table(binary(3));
    CHECK(is_mrf(indep, Graph::empty_graph(3), MrfMethod::Definition).holds);

    // the lumped first fixture is not an MRF on the path; the witness
    // conditions on Y2 = 0
    Instance e1 = builtin_fixture("example1");
    JointTable p_y = pushforward(e1.table(), *e1.lumping);
    MrfVerdict v = is_mrf(p_y, Graph::path(3), MrfMethod::Definition);
    CHECK(!v.holds);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->config[1] == "0");

    // the lumped second fixture is an MRF on {{1,3}}
    Instance e2 = builtin_fixture("example2");
    JointTable p_y2 = pushforward(e2.table(), *e2.lumping);
    CHECK(is_mrf(p_y2, Graph(3, {{1, 3}}), MrfMethod::Definition).holds);
    CHECK(!is_mrf(p_y2, Graph::path(3), MrfMethod::Definition).holds);
}

TEST_CASE("MRF membership is monotone under supergraphs") {
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int trial = 0; trial < 30 && checked < 12; ++trial) {
        Instance inst = random_instance(rng(), "generic", GenLimits{5, 2});
        JointTable t = inst.table();
        const Graph& g = inst.graph;
        if (!is_mrf(t, g, MrfMethod::Definition).holds) continue;
        ++checked;
        const int n = g.vertex_count();
        // every supergraph keeps the property (exhaustive over added edges)
        std::vector<std::pair<int, int>> missing;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (!g.has_edge(i, j)) missing.emplace_back(i, j);
        for (std::uint32_t mask = 0; mask < (1u << missing.size()); ++mask) {
            auto edges = g.edges();
            for (std::size_t b = 0; b < missing.size(); ++b)
                if (mask & (1u << b)) edges.push_back(missing[b]);
            CHECK(is_mrf(t, Graph(n, edges), MrfMethod::Definition).holds);
        }
    }
    CHECK(checked >= 5);
}

TEST_CASE("strictly positive tables are MRFs on the complete graph") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        Instance inst = random_instance(rng(), "prop1");
        JointTable t = inst.table();
        REQUIRE(t.strictly_positive());
        CHECK(is_mrf(t, Graph::complete(t.alphabet().vertex_count()),
                     MrfMethod::Definition)
                  .holds);
    }
}

TEST_CASE("both membership methods agree on random tables") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 120; ++trial) {
        Instance inst = random_instance(rng(), "generic");
        JointTable t = trial % 2 == 0 ? inst.table() : inst.table().to_float();
        int n = t.alphabet().vertex_count();
        std::vector<std::pair<int, int>> edges;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (rng() % 2) edges.emplace_back(i, j);
        Graph g(n, edges);
        CHECK(is_mrf(t, g, MrfMethod::Definition).holds ==
              is_mrf(t, g, MrfMethod::Entropy).holds);
    }
}

TEST_CASE("support enumeration") {
    AlphabetSpec a = binary(2);
    CHECK(support(uniform_table(binary(2))).size() == 4);
    JointTable point = JointTable::exact(a, {Rat(0), Rat(0), Rat(1), Rat(0)});
    CHECK(support(point) == std::vector<std::size_t>{2});

    // the composite-symbol fixture keeps only consistent triples
    Instance e3 = builtin_fixture("example3");
    JointTable t = e3.table();
    auto supp = support(t);
    CHECK(supp.size() == 8);
    for (std::size_t idx : supp) {
        auto labels = t.alphabet().labels_at(idx);
        CHECK(labels[1][0] == labels[0][0]);
        CHECK(labels[1][2] == labels[2][0]);
    }
}

TEST_CASE("state-space cap rejects oversized alphabets") {
    std::vector<std::vector<std::string>> symbols;
    std::vector<std::string> wide;
    for (int i = 0; i < 300; ++i) wide.push_back(std::to_string(i));
    for (int v = 0; v < 4; ++v) symbols.push_back(wide);
    auto oversized = [&] { return AlphabetSpec(symbols); };
    CHECK_THROWS_AS((void)oversized(), Error);
}
