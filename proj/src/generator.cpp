#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "mrf/error.hpp"
#include "mrf/indexing.hpp"
#include "mrf/instance.hpp"

// Seeded instance generator backing the property suites. Sampling goes
// through mt19937_64 with plain modulo reduction so the same seed yields the
// same instance on every platform.

namespace mrf {

namespace {

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t next() { return eng(); }
    int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }
    bool chance(int num, int den) { return below(den) < num; }
};

std::vector<std::string> numeric_symbols(int count) {
    std::vector<std::string> out;
    for (int k = 0; k < count; ++k) out.push_back(std::to_string(k));
    return out;
}

AlphabetSpec random_alphabet(Rng& rng, int n, int max_card) {
    std::vector<std::vector<std::string>> symbols;
    for (int v = 0; v < n; ++v) symbols.push_back(numeric_symbols(rng.range(2, max_card)));
    return AlphabetSpec(std::move(symbols));
}

Graph random_connected_graph(Rng& rng, int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 2; v <= n; ++v) edges.emplace_back(rng.range(1, v - 1), v);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (rng.chance(1, 3)) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph random_tree(Rng& rng, int n, std::vector<int>* parent_out) {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 2; v <= n; ++v) {
        parent[static_cast<std::size_t>(v)] = rng.range(1, v - 1);
        edges.emplace_back(parent[static_cast<std::size_t>(v)], v);
    }
    if (parent_out) *parent_out = std::move(parent);
    return Graph(n, std::move(edges));
}

// Grow a chordal graph by joining each new vertex to an existing clique.
Graph random_chordal_graph(Rng& rng, int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 2; v <= n; ++v) {
        Graph partial(v - 1, edges);
        std::vector<Clique> cliques = enumerate_cliques(partial);
        const Clique& target = cliques[static_cast<std::size_t>(rng.below(
            static_cast<int>(cliques.size())))];
        for (int u : target) edges.emplace_back(u, v);
    }
    return Graph(n, std::move(edges));
}

Lumping random_lumping(Rng& rng, const AlphabetSpec& a) {
    if (rng.chance(1, 4)) return Lumping::identity(a);
    std::vector<std::map<std::string, std::string>> maps(
        static_cast<std::size_t>(a.vertex_count()));
    for (int v = 1; v <= a.vertex_count(); ++v) {
        const auto& syms = a.symbols(v);
        const int m = static_cast<int>(syms.size());
        const int k = rng.range(1, m);
        for (int x = 0; x < m; ++x) {
            int target = x < k ? x : rng.below(k);
            maps[static_cast<std::size_t>(v - 1)][syms[static_cast<std::size_t>(x)]] =
                "y" + std::to_string(target);
        }
    }
    return Lumping::from_symbol_maps(a, maps);
}

PotentialTable random_positive_table(Rng& rng, std::size_t size) {
    std::vector<Rat> vals(size);
    for (Rat& v : vals) v = rng.range(1, 6);
    return PotentialTable::exact(std::move(vals));
}

// Positive Gibbs field: a potential on every edge, singletons at random.
PotentialFamily random_edge_family(Rng& rng, const Graph& g, const AlphabetSpec& a) {
    std::map<Clique, PotentialTable> pots;
    for (auto [i, j] : g.edges()) {
        std::size_t size = a.cardinality(i) * a.cardinality(j);
        pots.emplace(Clique{i, j}, random_positive_table(rng, size));
    }
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (rng.chance(1, 2))
            pots.emplace(Clique{v}, random_positive_table(rng, a.cardinality(v)));
    return PotentialFamily(g, a, std::move(pots));
}

// Tree-factored table with zeros: a root law and per-edge conditional rows,
// each row a normalized vector of small numerators (some zero).
JointTable random_tree_table(Rng& rng, const Graph& tree, const std::vector<int>& parent,
                             const AlphabetSpec& a) {
    const int n = tree.vertex_count();
    auto random_row = [&](std::size_t size) {
        std::vector<Rat> row(size);
        Rat total = 0;
        for (Rat& v : row) {
            v = rng.chance(1, 3) ? 0 : rng.range(1, 5);
            total += v;
        }
        if (total == 0) {
            row[static_cast<std::size_t>(rng.below(static_cast<int>(size)))] = 1;
            total = 1;
        }
        for (Rat& v : row) v /= total;
        return row;
    };
    std::vector<Rat> root = random_row(a.cardinality(1));
    // rows[v][parent symbol][child symbol]
    std::vector<std::vector<std::vector<Rat>>> rows(static_cast<std::size_t>(n) + 1);
    for (int v = 2; v <= n; ++v) {
        rows[static_cast<std::size_t>(v)].resize(a.cardinality(parent[static_cast<std::size_t>(v)]));
        for (auto& row : rows[static_cast<std::size_t>(v)]) row = random_row(a.cardinality(v));
    }
    std::vector<Rat> w(a.total_configurations());
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < w.size(); ++idx, advance_config(digits, a)) {
        Rat p = root[static_cast<std::size_t>(digits[0])];
        for (int v = 2; v <= n && p != 0; ++v) {
            int pv = parent[static_cast<std::size_t>(v)];
            p *= rows[static_cast<std::size_t>(v)][static_cast<std::size_t>(digits[pv - 1])]
                     [static_cast<std::size_t>(digits[v - 1])];
        }
        w[idx] = p;
    }
    return JointTable::exact(a, std::move(w));
}

JointTable random_sparse_table(Rng& rng, const AlphabetSpec& a) {
    std::vector<Rat> w(a.total_configurations());
    Rat total = 0;
    for (Rat& v : w) {
        v = rng.chance(1, 3) ? 0 : rng.range(1, 6);
        total += v;
    }
    if (total == 0) {
        w[0] = 1;
        total = 1;
    }
    for (Rat& v : w) v /= total;
    return JointTable::exact(a, std::move(w));
}

// Family in which every vertex has at most one strictly dependent clique:
// pick a clique C'(v) per vertex; a potential on clique C may look at the
// raw coordinate only for vertices assigned to C, and everywhere else only
// at the lumped coordinate.
PotentialFamily prop1_family(Rng& rng, const Graph& g, const AlphabetSpec& a,
                             const Lumping& lump, bool singleton_strict) {
    std::vector<Clique> cliques = enumerate_cliques(g);
    const int n = g.vertex_count();
    std::vector<Clique> chosen(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) {
        if (singleton_strict) {
            chosen[static_cast<std::size_t>(v - 1)] = Clique{v};
            continue;
        }
        std::vector<Clique> containing;
        for (const Clique& c : cliques)
            if (std::binary_search(c.begin(), c.end(), v)) containing.push_back(c);
        chosen[static_cast<std::size_t>(v - 1)] = containing[static_cast<std::size_t>(
            rng.below(static_cast<int>(containing.size())))];
    }
    if (!singleton_strict && rng.chance(1, 3)) {
        // force a shared class: both endpoints of one edge assigned to it
        const auto& edges = g.edges();
        auto [i, j] = edges[static_cast<std::size_t>(rng.below(static_cast<int>(edges.size())))];
        chosen[static_cast<std::size_t>(i - 1)] = Clique{i, j};
        chosen[static_cast<std::size_t>(j - 1)] = Clique{i, j};
    }

    std::map<Clique, std::vector<int>> strict_slots;
    for (int v = 1; v <= n; ++v) strict_slots[chosen[static_cast<std::size_t>(v - 1)]].push_back(v);

    std::map<Clique, PotentialTable> pots;
    auto build_table = [&](const Clique& c, const std::vector<int>& strict) {
        // values drawn per (raw strict coordinates, lumped other coordinates)
        std::vector<std::size_t> key_stride(c.size());
        std::size_t key_size = 1;
        for (std::size_t k = c.size(); k-- > 0;) {
            key_stride[k] = key_size;
            bool is_strict = std::binary_search(strict.begin(), strict.end(), c[k]);
            key_size *= is_strict ? a.cardinality(c[k]) : lump.codomain().cardinality(c[k]);
        }
        std::vector<Rat> draws(key_size);
        for (Rat& v : draws) v = rng.range(1, 6);
        AlphabetSpec sub = a.restrict_to(c);
        std::vector<Rat> vals(sub.total_configurations());
        std::vector<int> local(c.size(), 0);
        for (std::size_t idx = 0; idx < vals.size(); ++idx, advance_config(local, sub)) {
            std::size_t key = 0;
            for (std::size_t k = 0; k < c.size(); ++k) {
                bool is_strict = std::binary_search(strict.begin(), strict.end(), c[k]);
                int digit = is_strict ? local[k] : lump.map(c[k], local[k]);
                key += key_stride[k] * static_cast<std::size_t>(digit);
            }
            vals[idx] = draws[key];
        }
        return PotentialTable::exact(std::move(vals));
    };

    for (const auto& [c, strict] : strict_slots) pots.emplace(c, build_table(c, strict));
    // extra lumping-respecting potentials for variety
    for (auto [i, j] : g.edges()) {
        Clique c{i, j};
        if (pots.count(c) || !rng.chance(1, 2)) continue;
        pots.emplace(c, build_table(c, {}));
    }
    return PotentialFamily(g, a, std::move(pots));
}

}  // namespace

Instance random_instance(std::uint64_t seed, const std::string& profile,
                         const GenLimits& limits) {
    if (limits.max_vertices < 2 || limits.max_vertices > 8 || limits.max_alphabet < 2 ||
        limits.max_alphabet > 6)
        fail(ErrorCode::SizeCap, "generator limits out of range");
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    const int n = rng.range(2, limits.max_vertices);
    AlphabetSpec a = random_alphabet(rng, n, limits.max_alphabet);
    std::vector<std::string> names;
    for (int v = 1; v <= n; ++v) names.push_back("X" + std::to_string(v));
    const std::string name = "gen-" + profile + "-" + std::to_string(seed);

    if (profile == "generic") {
        int variant = rng.below(4);
        Lumping lump = random_lumping(rng, a);
        if (variant <= 1) {
            Graph g = random_connected_graph(rng, n);
            PotentialFamily f = random_edge_family(rng, g, a);
            return Instance{name, std::move(g), a, names, std::move(f), std::move(lump)};
        }
        if (variant == 2) {
            std::vector<int> parent;
            Graph g = random_tree(rng, n, &parent);
            JointTable t = random_tree_table(rng, g, parent, a);
            return Instance{name, std::move(g), a, names, std::move(t), std::move(lump)};
        }
        Graph g = Graph::complete(n);
        JointTable t = random_sparse_table(rng, a);
        return Instance{name, std::move(g), a, names, std::move(t), std::move(lump)};
    }
    if (profile == "prop1") {
        Graph g = random_connected_graph(rng, n);
        Lumping lump = random_lumping(rng, a);
        bool singleton_strict = rng.chance(1, 2);
        PotentialFamily f = prop1_family(rng, g, a, lump, singleton_strict);
        return Instance{name, std::move(g), a, names, std::move(f), std::move(lump)};
    }
    if (profile == "chordal") {
        Graph g = random_chordal_graph(rng, n);
        Lumping lump = rng.chance(1, 3) ? Lumping::identity(a) : random_lumping(rng, a);
        PotentialFamily f = random_edge_family(rng, g, a);
        return Instance{name, std::move(g), a, names, std::move(f), std::move(lump)};
    }
    fail(ErrorCode::UnknownName, "unknown generator profile '" + profile + "'");
}

}  // namespace mrf
