#include <functional>
#include <map>

#include "mrf/error.hpp"
#include "mrf/indexing.hpp"
#include "mrf/instance.hpp"

// Bundled example instances. Where a scenario constrains its distribution
// without fixing every number, the free parameters are pinned here; each
// builder states the constraints the pinned values satisfy.

namespace mrf {

namespace {

JointTable exact_table(const AlphabetSpec& a,
                       const std::function<Rat(const std::vector<int>&)>& weight_of) {
    std::vector<Rat> w(a.total_configurations());
    std::vector<int> digits(static_cast<std::size_t>(a.vertex_count()), 0);
    for (std::size_t idx = 0; idx < w.size(); ++idx, advance_config(digits, a))
        w[idx] = weight_of(digits);
    return JointTable::exact(a, std::move(w));
}

std::vector<std::map<std::string, std::string>> identity_maps(const AlphabetSpec& a) {
    std::vector<std::map<std::string, std::string>> maps(
        static_cast<std::size_t>(a.vertex_count()));
    for (int v = 1; v <= a.vertex_count(); ++v)
        for (const std::string& s : a.symbols(v)) maps[static_cast<std::size_t>(v - 1)][s] = s;
    return maps;
}

std::map<std::string, std::string> mod2_map() {
    return {{"0", "0"}, {"1", "1"}, {"2", "0"}};
}

// Ternary Markov path, each coordinate reduced mod 2. Pinned:
//   p(X2) = (1/4, 1/2, 1/4);
//   p(X1|X2): (1|0) = 0, (1|2) = 2/5, column for X2=1 uniform, the rest of
//   each column split evenly (all positive);
//   p(X3|X2) mirrors p(X1|X2) with X2 reversed.
Instance make_example1() {
    AlphabetSpec a({{"0", "1", "2"}, {"0", "1", "2"}, {"0", "1", "2"}});
    const Rat px2[3] = {Rat(1, 4), Rat(1, 2), Rat(1, 4)};
    // c1[x2][x1], c3[x2][x3]
    const Rat c1[3][3] = {{Rat(1, 2), Rat(0), Rat(1, 2)},
                          {Rat(1, 3), Rat(1, 3), Rat(1, 3)},
                          {Rat(3, 10), Rat(2, 5), Rat(3, 10)}};
    const Rat c3[3][3] = {{Rat(3, 10), Rat(2, 5), Rat(3, 10)},
                          {Rat(1, 3), Rat(1, 3), Rat(1, 3)},
                          {Rat(1, 2), Rat(0), Rat(1, 2)}};
    JointTable t = exact_table(a, [&](const std::vector<int>& x) {
        return px2[x[1]] * c1[x[1]][x[0]] * c3[x[1]][x[2]];
    });
    Lumping lump = Lumping::from_symbol_maps(a, {mod2_map(), mod2_map(), mod2_map()});
    return Instance{"example1", Graph::path(3), a, {"X1", "X2", "X3"}, std::move(t), lump};
}

// X1 = X2 + Z1, X3 = X2 + Z3 with X2 in {-1,1}, Z1 in {0,1}, Z3 in {-1,0},
// all uniform and independent; g1, g3 identity, g2 constant.
Instance make_example2() {
    AlphabetSpec a({{"-1", "0", "1", "2"}, {"-1", "1"}, {"-2", "-1", "0", "1"}});
    const int x1_vals[4] = {-1, 0, 1, 2};
    const int x2_vals[2] = {-1, 1};
    const int x3_vals[4] = {-2, -1, 0, 1};
    JointTable t = exact_table(a, [&](const std::vector<int>& x) {
        int z1 = x1_vals[x[0]] - x2_vals[x[1]];
        int z3 = x3_vals[x[2]] - x2_vals[x[1]];
        return (z1 == 0 || z1 == 1) && (z3 == -1 || z3 == 0) ? Rat(1, 8) : Rat(0);
    });
    std::vector<std::map<std::string, std::string>> maps = identity_maps(a);
    maps[1] = {{"-1", "0"}, {"1", "0"}};
    Lumping lump = Lumping::from_symbol_maps(a, maps);
    return Instance{"example2", Graph::path(3), a, {"X1", "X2", "X3"}, std::move(t), lump};
}

// X2 carries the triple (X1, Z2, X3) of independent uniform bits; g2 keeps
// only the middle coordinate.
Instance make_example3() {
    std::vector<std::string> triples;
    for (char b0 : {'0', '1'})
        for (char b1 : {'0', '1'})
            for (char b2 : {'0', '1'}) triples.push_back(std::string{b0, b1, b2});
    AlphabetSpec a({{"0", "1"}, triples, {"0", "1"}});
    JointTable t = exact_table(a, [&](const std::vector<int>& x) {
        const std::string& mid = a.symbols(2)[static_cast<std::size_t>(x[1])];
        bool consistent = (mid[0] - '0') == x[0] && (mid[2] - '0') == x[2];
        return consistent ? Rat(1, 8) : Rat(0);
    });
    std::vector<std::map<std::string, std::string>> maps = identity_maps(a);
    maps[1].clear();
    for (const std::string& s : triples) maps[1][s] = std::string{s[1]};
    Lumping lump = Lumping::from_symbol_maps(a, maps);
    return Instance{"example3", Graph::path(3), a, {"X1", "X2", "X3"}, std::move(t), lump};
}

// Ternary Markov path given by potentials. Pinned: edge potentials
// U(y,y') = 1 + [y = y'] composed with the mod-2 maps (so they depend on x
// only via y), singleton potentials (1,2,3), (1,9,4), (2,1,3) all strictly
// dependent; the vertex-2 values are perfect squares so the rewritten
// family stays rational.
Instance make_example4() {
    AlphabetSpec a({{"0", "1", "2"}, {"0", "1", "2"}, {"0", "1", "2"}});
    Graph g = Graph::path(3);
    auto edge_table = [&]() {
        std::vector<Rat> vals(9);
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
                vals[static_cast<std::size_t>(x * 3 + y)] = (x % 2) == (y % 2) ? 2 : 1;
        return PotentialTable::exact(std::move(vals));
    };
    std::map<Clique, PotentialTable> pots;
    pots.emplace(Clique{1}, PotentialTable::exact({Rat(1), Rat(2), Rat(3)}));
    pots.emplace(Clique{2}, PotentialTable::exact({Rat(1), Rat(9), Rat(4)}));
    pots.emplace(Clique{3}, PotentialTable::exact({Rat(2), Rat(1), Rat(3)}));
    pots.emplace(Clique{1, 2}, edge_table());
    pots.emplace(Clique{2, 3}, edge_table());
    PotentialFamily f(g, a, std::move(pots));
    Lumping lump = Lumping::from_symbol_maps(a, {mod2_map(), mod2_map(), mod2_map()});
    return Instance{"example4", std::move(g), a, {"X1", "X2", "X3"}, std::move(f), lump};
}

// Two adjacent vertices; X1 uniform ternary, X2 = X1 mod 2. g1 merges
// {0,1}, g2 is the identity.
Instance make_example5() {
    AlphabetSpec a({{"0", "1", "2"}, {"0", "1"}});
    JointTable t = exact_table(a, [&](const std::vector<int>& x) {
        return x[1] == x[0] % 2 ? Rat(1, 3) : Rat(0);
    });
    std::vector<std::map<std::string, std::string>> maps = identity_maps(a);
    maps[0] = {{"0", "01"}, {"1", "01"}, {"2", "2"}};
    Lumping lump = Lumping::from_symbol_maps(a, maps);
    return Instance{"example5", Graph::path(2), a, {"X1", "X2"}, std::move(t), lump};
}

// X1 = X2 uniform ternary, both coordinates reduced mod 2: the shared map
// collides (0,0) with (2,2) on the support.
Instance make_infoloss() {
    AlphabetSpec a({{"0", "1", "2"}, {"0", "1", "2"}});
    JointTable t = exact_table(a, [&](const std::vector<int>& x) {
        return x[0] == x[1] ? Rat(1, 3) : Rat(0);
    });
    Lumping lump = Lumping::from_symbol_maps(a, {mod2_map(), mod2_map()});
    return Instance{"infoloss", Graph::path(2), a, {"X1", "X2"}, std::move(t), lump};
}

// Three steps of a stationary chain on {0,1,2} with kernel rows
// (1/2,1/2,0), (1/2,0,1/2), (1/2,1/2,0) and stationary start (1/2,1/3,1/6).
// Each row meets the merged pair {1,2} in at most one state, so
// H(X2|Y2,X1) = H(X3|Y3,X2) = 0; the first coordinate stays unlumped so the
// ordering (1,2,3) witnesses preservation.
Instance make_mc_remark() {
    AlphabetSpec a({{"0", "1", "2"}, {"0", "1", "2"}, {"0", "1", "2"}});
    const Rat pi[3] = {Rat(1, 2), Rat(1, 3), Rat(1, 6)};
    const Rat k[3][3] = {{Rat(1, 2), Rat(1, 2), Rat(0)},
                         {Rat(1, 2), Rat(0), Rat(1, 2)},
                         {Rat(1, 2), Rat(1, 2), Rat(0)}};
    JointTable t = exact_table(a, [&](const std::vector<int>& x) {
        return pi[x[0]] * k[x[0]][x[1]] * k[x[1]][x[2]];
    });
    std::map<std::string, std::string> merge{{"0", "0"}, {"1", "12"}, {"2", "12"}};
    std::vector<std::map<std::string, std::string>> maps = identity_maps(a);
    maps[1] = merge;
    maps[2] = merge;
    Lumping lump = Lumping::from_symbol_maps(a, maps);
    return Instance{"mc_remark", Graph::path(3), a, {"X1", "X2", "X3"}, std::move(t), lump};
}

}  // namespace

const std::vector<std::string>& builtin_fixture_names() {
    static const std::vector<std::string> names = {"example1", "example2", "example3",
                                                   "example4", "example5", "infoloss",
                                                   "mc_remark"};
    return names;
}

Instance builtin_fixture(const std::string& name) {
    if (name == "example1") return make_example1();
    if (name == "example2") return make_example2();
    if (name == "example3") return make_example3();
    if (name == "example4") return make_example4();
    if (name == "example5") return make_example5();
    if (name == "infoloss") return make_infoloss();
    if (name == "mc_remark") return make_mc_remark();
    fail(ErrorCode::UnknownName, "unknown fixture '" + name + "'");
}

PotentialFamily example4_rewritten_family() {
    Instance inst = make_example4();
    const PotentialFamily& f = *inst.family();
    // sqrt of the vertex-2 singleton (1,9,4) -> (1,3,2), multiplied into
    // both edge potentials; the singleton itself becomes constant one.
    const Rat root[3] = {Rat(1), Rat(3), Rat(2)};
    auto scaled_edge = [&](const Clique& c, bool vertex2_first) {
        const PotentialTable& base = f.potentials().at(c);
        std::vector<Rat> vals(base.size());
        for (std::size_t idx = 0; idx < vals.size(); ++idx) {
            std::size_t x2 = vertex2_first ? idx / 3 : idx % 3;
            vals[idx] = base.value_exact(idx) * root[x2];
        }
        return PotentialTable::exact(std::move(vals));
    };
    std::map<Clique, PotentialTable> pots;
    pots.emplace(Clique{1}, f.potentials().at(Clique{1}));
    pots.emplace(Clique{3}, f.potentials().at(Clique{3}));
    pots.emplace(Clique{1, 2}, scaled_edge({1, 2}, false));
    pots.emplace(Clique{2, 3}, scaled_edge({2, 3}, true));
    return PotentialFamily(f.graph(), f.alphabet(), std::move(pots));
}

}  // namespace mrf
