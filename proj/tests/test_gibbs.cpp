#include <doctest.h>

#include <random>

#include "mrf/error.hpp"
#include "mrf/indexing.hpp"
#include "mrf/instance.hpp"
#include "mrf/lump.hpp"

using namespace mrf;

namespace {

AlphabetSpec binary(int n) {
    std::vector<std::string> bit{"0", "1"};
    return AlphabetSpec(
        std::vector<std::vector<std::string>>(static_cast<std::size_t>(n), bit));
}

}  // namespace

TEST_CASE("partition function on tiny families") {
    AlphabetSpec a1(std::vector<std::vector<std::string>>{{"0", "1"}});
    PotentialFamily single(Graph::empty_graph(1), a1,
                           {{Clique{1}, PotentialTable::exact({Rat(1), Rat(3)})}});
    CHECK(partition_function(single).exact == Rat(4));

    AlphabetSpec a3 = binary(3);
    PotentialFamily ones(Graph::path(3), a3, {});
    CHECK(partition_function(ones).exact == Rat(8));
}

TEST_CASE("the two equivalent families share a partition function") {
    Instance inst = builtin_fixture("example4");
    Scalar z1 = partition_function(*inst.family());
    Scalar z2 = partition_function(example4_rewritten_family());
    CHECK(z1.exact == z2.exact);
    CHECK(synthesize_pmf(example4_rewritten_family())
              .same_distribution(synthesize_pmf(*inst.family())));
}

TEST_CASE("synthesis normalizes potential products") {
    AlphabetSpec a = binary(3);
    PotentialFamily ones(Graph::path(3), a, {});
    JointTable uniform = synthesize_pmf(ones);
    for (std::size_t idx = 0; idx < 8; ++idx) CHECK(uniform.weight_exact(idx) == Rat(1, 8));

    // one attractive edge on a two-vertex path
    AlphabetSpec a2 = binary(2);
    PotentialFamily f(Graph::path(2), a2,
                      {{Clique{1, 2},
                        PotentialTable::exact({Rat(2), Rat(1), Rat(1), Rat(2)})}});
    JointTable t = synthesize_pmf(f);
    CHECK(t.weight_exact(0) == Rat(2, 6));
    CHECK(t.weight_exact(1) == Rat(1, 6));
    CHECK(t.weight_exact(2) == Rat(1, 6));
    CHECK(t.weight_exact(3) == Rat(2, 6));
}

TEST_CASE("synthesized tables are positive MRFs on the family graph") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        Instance inst = random_instance(rng(), "prop1");
        JointTable t = synthesize_pmf(*inst.family());
        CHECK(t.strictly_positive());
        CHECK(is_mrf(t, inst.graph, MrfMethod::Definition).holds);
    }
}

TEST_CASE("scaling a potential leaves the distribution unchanged") {
    Instance inst = builtin_fixture("example4");
    const PotentialFamily& f = *inst.family();
    JointTable base = synthesize_pmf(f);
    PotentialFamily scaled =
        f.with_potential({1, 2}, f.potentials().at({1, 2}).scaled(Scalar::of(Rat(3, 2))));
    CHECK(synthesize_pmf(scaled).same_distribution(base));
}

TEST_CASE("canonical fit on a product distribution uses only singleton potentials") {
    AlphabetSpec a = binary(2);
    JointTable t = JointTable::exact(a, {Rat(1, 8), Rat(3, 8), Rat(1, 8), Rat(3, 8)});
    PotentialFamily f = fit_canonical_potentials(t, Graph::empty_graph(2));
    CHECK(f.potentials().size() == 2);
    const PotentialTable& p2 = f.potentials().at(Clique{2});
    // psi_2 proportional to the marginal of X2 (= (1/4, 3/4))
    CHECK(p2.value_exact(1) / p2.value_exact(0) == Rat(3));
}

TEST_CASE("canonical fit round-trips synthesized families") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        Instance inst = random_instance(rng(), "prop1");
        JointTable t = synthesize_pmf(*inst.family());
        PotentialFamily fitted = fit_canonical_potentials(t, inst.graph);
        CHECK(synthesize_pmf(fitted).same_distribution(t));
        // reference anchoring: every potential is 1 at the all-first-symbol cell
        for (const auto& [c, table] : fitted.potentials()) {
            (void)c;
            CHECK(table.value_exact(0) == Rat(1));
        }
    }
}

TEST_CASE("canonical fit rejects a positive non-MRF table naming the offending set") {
    // weight proportional to 1 + [x1 = x3]: couples 1 and 3 across the path
    AlphabetSpec a = binary(3);
    std::vector<Rat> w(8);
    Rat total = 0;
    for (std::size_t idx = 0; idx < 8; ++idx) {
        auto cfg = a.config_at(idx);
        w[idx] = cfg[0] == cfg[2] ? 2 : 1;
        total += w[idx];
    }
    for (Rat& x : w) x /= total;
    JointTable t = JointTable::exact(a, std::move(w));
    try {
        fit_canonical_potentials(t, Graph::path(3));
        FAIL("expected NotMrfError");
    } catch (const NotMrfError& e) {
        CHECK(e.offending_set() == std::vector<int>{1, 3});
    }
}

TEST_CASE("canonical fit requires a strictly positive table") {
    Instance e1 = builtin_fixture("example1");
    JointTable p_y = pushforward(e1.table(), *e1.lumping);
    try {
        fit_canonical_potentials(p_y, Graph::path(3));
        FAIL("expected a positivity error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonPositiveTable);
    }
}

TEST_CASE("strict dependence detection") {
    Instance inst = builtin_fixture("example4");
    const PotentialFamily& f = *inst.family();
    const Lumping& lump = *inst.lumping;

    // edge potentials factor through the lumping
    CHECK(depends_only_via(f, {1, 2}, 1, lump));
    CHECK(depends_only_via(f, {1, 2}, 2, lump));
    // singleton potentials are strict: (1,2,3) separates the merged pair {0,2}
    CHECK(!depends_only_via(f, {1}, 1, lump));
    CHECK(!depends_only_via(f, {2}, 2, lump));

    // the rewrite pushes the vertex-2 dependence into both edges
    PotentialFamily rewritten = example4_rewritten_family();
    CHECK(!depends_only_via(rewritten, {1, 2}, 2, lump));
    CHECK(!depends_only_via(rewritten, {2, 3}, 2, lump));
    CHECK(depends_only_via(rewritten, {1, 2}, 1, lump));

    // injective maps make the question vacuous
    Lumping id = Lumping::identity(inst.alphabet);
    CHECK(depends_only_via(f, {2}, 2, id));

    CHECK_THROWS_AS((void)depends_only_via(f, {1, 2}, 3, lump), Error);
}

TEST_CASE("clique assignment on the two equivalent families") {
    Instance inst = builtin_fixture("example4");
    const Lumping& lump = *inst.lumping;

    AssignOutcome ok = assign_cliques(*inst.family(), lump);
    REQUIRE(ok.ok());
    CHECK(ok.assignment->assignment ==
          std::vector<Clique>{{1}, {2}, {3}});
    CHECK(ok.assignment->injective());

    AssignOutcome bad = assign_cliques(example4_rewritten_family(), lump);
    CHECK(!bad.ok());
    REQUIRE(bad.conflicts.size() == 1);
    CHECK(bad.conflicts[0].vertex == 2);
    CHECK(bad.conflicts[0].strict_cliques == std::vector<Clique>{{1, 2}, {2, 3}});
}

TEST_CASE("injective lumpings assign every vertex its singleton") {
    Instance inst = builtin_fixture("example4");
    Lumping id = Lumping::identity(inst.alphabet);
    AssignOutcome out = assign_cliques(*inst.family(), id);
    REQUIRE(out.ok());
    for (int v = 1; v <= 3; ++v)
        CHECK(out.assignment->assignment[static_cast<std::size_t>(v - 1)] == Clique{v});
}

TEST_CASE("coordinate-wise constancy extends to joint preimages") {
    std::mt19937_64 rng(43);
    int verified = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Instance inst = random_instance(rng(), "prop1");
        const PotentialFamily& f = *inst.family();
        const Lumping& lump = *inst.lumping;
        for (const auto& [c, table] : f.potentials()) {
            (void)table;
            if (c.size() < 2) continue;
            int i = c[0], j = c[1];
            if (!depends_only_via(f, c, i, lump) || !depends_only_via(f, c, j, lump)) continue;
            // constant on every product preimage of the (i, j) pair
            const AlphabetSpec& a = f.alphabet();
            AlphabetSpec sub = a.restrict_to(c);
            std::vector<int> local(c.size(), 0);
            std::vector<int> full(static_cast<std::size_t>(a.vertex_count()), 0);
            for (std::size_t li = 0; li < sub.total_configurations();
                 ++li, advance_config(local, sub)) {
                for (std::size_t k = 0; k < c.size(); ++k)
                    full[static_cast<std::size_t>(c[k] - 1)] = local[k];
                Scalar base = f.value(c, full);
                for (int xi : lump.preimage(i, lump.map(i, local[0]))) {
                    for (int xj : lump.preimage(j, lump.map(j, local[1]))) {
                        full[static_cast<std::size_t>(i - 1)] = xi;
                        full[static_cast<std::size_t>(j - 1)] = xj;
                        CHECK(f.value(c, full).exact == base.exact);
                    }
                }
                ++verified;
            }
        }
    }
    CHECK(verified > 100);
}
