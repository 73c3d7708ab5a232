#include "mrf/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <string>

#include "mrf/error.hpp"

namespace mrf {

namespace {

constexpr int kMaxVertices = 30;  // adjacency kept in 32-bit masks
constexpr int kMaxCliqueEnumeration = 20;
constexpr int kMaxMcsAllVertices = 8;
constexpr std::size_t kMaxMcsOrderings = 1'000'000;

void check_vertex(const Graph& g, int i) {
    if (i < 1 || i > g.vertex_count())
        fail(ErrorCode::VertexRange,
             "vertex " + std::to_string(i) + " out of range 1.." +
                 std::to_string(g.vertex_count()));
}

}  // namespace

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edges) : n_(vertex_count) {
    if (n_ < 1 || n_ > kMaxVertices)
        fail(ErrorCode::VertexRange,
             "vertex count must be in 1.." + std::to_string(kMaxVertices));
    adj_.assign(static_cast<std::size_t>(n_), 0);
    for (auto& [a, b] : edges) {
        if (a < 1 || a > n_ || b < 1 || b > n_)
            fail(ErrorCode::DanglingVertex,
                 "edge {" + std::to_string(a) + "," + std::to_string(b) +
                     "} references a vertex outside 1.." + std::to_string(n_));
        if (a == b)
            fail(ErrorCode::VertexRange, "self-loop at vertex " + std::to_string(a));
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [a, b] : edges) {
        adj_[a - 1] |= 1u << (b - 1);
        adj_[b - 1] |= 1u << (a - 1);
    }
    edges_ = std::move(edges);
}

Graph Graph::empty_graph(int n) { return Graph(n, {}); }

Graph Graph::path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
}

Graph Graph::complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

bool Graph::has_edge(int i, int j) const {
    check_vertex(*this, i);
    check_vertex(*this, j);
    if (i == j) return false;
    return (adj_[i - 1] >> (j - 1)) & 1u;
}

std::vector<int> Graph::neighbors(int i) const {
    check_vertex(*this, i);
    std::vector<int> out;
    std::uint32_t m = adj_[i - 1];
    while (m) {
        int v = std::countr_zero(m);
        out.push_back(v + 1);
        m &= m - 1;
    }
    return out;
}

std::uint32_t Graph::neighbor_mask(int i) const {
    check_vertex(*this, i);
    return adj_[i - 1];
}

bool Graph::is_connected() const {
    std::uint32_t seen = 1u;  // start from vertex 1
    std::uint32_t frontier = 1u;
    while (frontier) {
        std::uint32_t next = 0;
        std::uint32_t m = frontier;
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            next |= adj_[v];
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return std::popcount(seen) == n_;
}

bool Graph::is_complete() const {
    return edges_.size() == static_cast<std::size_t>(n_) * (n_ - 1) / 2;
}

bool clique_less(const Clique& a, const Clique& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

bool is_clique(const Graph& g, const Clique& members) {
    if (members.empty()) return false;
    for (std::size_t i = 0; i < members.size(); ++i) {
        check_vertex(g, members[i]);
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (members[i] == members[j]) return false;
            if (!g.has_edge(members[i], members[j])) return false;
        }
    }
    return true;
}

std::vector<Clique> enumerate_cliques(const Graph& g) {
    const int n = g.vertex_count();
    if (n > kMaxCliqueEnumeration)
        fail(ErrorCode::SizeCap,
             "clique enumeration is exhaustive and limited to " +
                 std::to_string(kMaxCliqueEnumeration) + " vertices");
    std::vector<Clique> out;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        // every pair inside the mask must be an edge
        bool ok = true;
        std::uint32_t rest = mask;
        while (ok && rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            if ((g.neighbor_mask(v + 1) & rest) != rest) ok = false;
        }
        if (!ok) continue;
        Clique c;
        std::uint32_t m = mask;
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            c.push_back(v + 1);
        }
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), clique_less);
    return out;
}

namespace {

// Single MCS pass; returns the visit order with smallest-index tie-breaks.
std::vector<int> mcs_pass(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> cardinality(static_cast<std::size_t>(n), 0);
    std::vector<bool> placed(static_cast<std::size_t>(n), false);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            if (best == -1 || cardinality[v] > cardinality[best]) best = v;
        }
        placed[best] = true;
        order.push_back(best + 1);
        std::uint32_t m = g.neighbor_mask(best + 1);
        while (m) {
            int w = std::countr_zero(m);
            m &= m - 1;
            if (!placed[w]) ++cardinality[w];
        }
    }
    return order;
}

std::vector<int> prior_neighbors_of(const Graph& g, const std::vector<int>& order,
                                    std::size_t pos) {
    std::uint32_t before = 0;
    for (std::size_t k = 0; k < pos; ++k) before |= 1u << (order[k] - 1);
    std::uint32_t m = g.neighbor_mask(order[pos]) & before;
    std::vector<int> out;
    while (m) {
        int v = std::countr_zero(m);
        m &= m - 1;
        out.push_back(v + 1);
    }
    return out;
}

EliminationOrder with_prior_sets(const Graph& g, std::vector<int> order) {
    EliminationOrder eo;
    eo.prior_neighbors.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        eo.prior_neighbors.push_back(prior_neighbors_of(g, order, i));
    eo.permutation = std::move(order);
    return eo;
}

// Does the MCS order certify chordality? For each vertex, all earlier
// neighbors minus the latest one must be adjacent to that latest one.
bool peo_check(const Graph& g, const std::vector<int>& order) {
    const int n = g.vertex_count();
    std::vector<int> position(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) position[order[i]] = i;
    for (int i = 0; i < n; ++i) {
        std::vector<int> prior = prior_neighbors_of(g, order, i);
        if (prior.size() < 2) continue;
        int latest = prior[0];
        for (int v : prior)
            if (position[v] > position[latest]) latest = v;
        for (int v : prior) {
            if (v == latest) continue;
            if (!g.has_edge(v, latest)) return false;
        }
    }
    return true;
}

// Search for an induced cycle of length >= 4: for a vertex v with
// non-adjacent neighbors u,w, any shortest u-w path avoiding N[v] closes
// one. Complete: every chordless cycle contains such a triple.
std::vector<int> find_chordless_cycle(const Graph& g) {
    const int n = g.vertex_count();
    for (int v = 1; v <= n; ++v) {
        std::vector<int> nb = g.neighbors(v);
        for (std::size_t a = 0; a < nb.size(); ++a) {
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                int u = nb[a], w = nb[b];
                if (g.has_edge(u, w)) continue;
                std::uint32_t blocked = g.neighbor_mask(v) | (1u << (v - 1));
                blocked &= ~(1u << (u - 1));
                blocked &= ~(1u << (w - 1));
                // BFS u -> w in the graph minus blocked vertices
                std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
                std::deque<int> q{u};
                parent[u] = u;
                while (!q.empty() && parent[w] == 0) {
                    int x = q.front();
                    q.pop_front();
                    std::uint32_t m = g.neighbor_mask(x) & ~blocked;
                    while (m) {
                        int y = std::countr_zero(m) + 1;
                        m &= m - 1;
                        if (parent[y] == 0) {
                            parent[y] = x;
                            q.push_back(y);
                        }
                    }
                }
                if (parent[w] == 0) continue;
                std::vector<int> cycle{v};
                for (int x = w; x != u; x = parent[x]) cycle.push_back(x);
                cycle.push_back(u);
                std::reverse(cycle.begin() + 1, cycle.end());
                return cycle;  // v, u, ..., w
            }
        }
    }
    return {};
}

}  // namespace

ChordalityResult is_chordal(const Graph& g) {
    if (peo_check(g, mcs_pass(g))) return {true, {}};
    std::vector<int> cycle = find_chordless_cycle(g);
    if (cycle.empty())
        fail(ErrorCode::InvariantViolation,
             "MCS rejected the graph but no chordless cycle was found");
    return {false, std::move(cycle)};
}

std::vector<EliminationOrder> mcs_orderings(const Graph& g, bool all) {
    if (!g.is_connected()) fail(ErrorCode::NotConnected, "MCS requires a connected graph");
    ChordalityResult ch = is_chordal(g);
    if (!ch.chordal) fail(ErrorCode::NotChordal, "MCS orderings require a chordal graph");

    const int n = g.vertex_count();
    if (!all) return {with_prior_sets(g, mcs_pass(g))};

    if (n > kMaxMcsAllVertices)
        fail(ErrorCode::SizeCap, "enumerating all MCS tie-breaks is limited to " +
                                     std::to_string(kMaxMcsAllVertices) + " vertices");

    std::vector<EliminationOrder> out;
    std::vector<int> cardinality(static_cast<std::size_t>(n), 0);
    std::vector<bool> placed(static_cast<std::size_t>(n), false);
    std::vector<int> order;

    auto recurse = [&](auto&& self) -> void {
        if (order.size() == static_cast<std::size_t>(n)) {
            if (out.size() >= kMaxMcsOrderings)
                fail(ErrorCode::SizeCap, "more than 10^6 MCS orderings");
            out.push_back(with_prior_sets(g, order));
            return;
        }
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!placed[v] && (best == -1 || cardinality[v] > cardinality[best])) best = v;
        const int target = cardinality[best];
        for (int v = 0; v < n; ++v) {
            if (placed[v] || cardinality[v] != target) continue;
            placed[v] = true;
            order.push_back(v + 1);
            std::uint32_t m = g.neighbor_mask(v + 1);
            while (m) {
                int w = std::countr_zero(m);
                m &= m - 1;
                if (!placed[w]) ++cardinality[w];
            }
            self(self);
            m = g.neighbor_mask(v + 1);
            while (m) {
                int w = std::countr_zero(m);
                m &= m - 1;
                if (!placed[w]) --cardinality[w];
            }
            order.pop_back();
            placed[v] = false;
        }
    };
    recurse(recurse);
    return out;
}

}  // namespace mrf
