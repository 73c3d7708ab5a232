#ifndef MRF_GRAPH_HPP
#define MRF_GRAPH_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace mrf {

// Undirected graph on vertices 1..N (contiguous, 1-based throughout the
// library; name aliasing lives in the CLI layer). Immutable after
// construction.
class Graph {
  public:
    Graph(int vertex_count, std::vector<std::pair<int, int>> edges);

    static Graph empty_graph(int n);
    static Graph path(int n);
    static Graph complete(int n);

    int vertex_count() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int i, int j) const;
    std::vector<int> neighbors(int i) const;
    std::uint32_t neighbor_mask(int i) const;

    bool is_connected() const;
    bool is_complete() const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

  private:
    int n_;
    std::vector<std::uint32_t> adj_;                // bit v-1 set when {i,v} in E
    std::vector<std::pair<int, int>> edges_;        // canonical: i < j, sorted
};

// Sorted, nonempty vertex list. Singletons are cliques by convention.
using Clique = std::vector<int>;

// Canonical clique order: by size, then lexicographically.
bool clique_less(const Clique& a, const Clique& b);

struct EliminationOrder {
    std::vector<int> permutation;                   // v_1..v_N
    std::vector<std::vector<int>> prior_neighbors;  // A_{v_i}, sorted

    bool operator==(const EliminationOrder&) const = default;
};

// All cliques including singletons, canonically sorted.
std::vector<Clique> enumerate_cliques(const Graph& g);

bool is_clique(const Graph& g, const Clique& members);

struct ChordalityResult {
    bool chordal;
    std::vector<int> witness_cycle;  // chordless cycle of length >= 4 when !chordal
};

ChordalityResult is_chordal(const Graph& g);

// Maximum cardinality search orderings. With all=false, ties break toward
// the smallest vertex index; with all=true, every tie-break is explored
// (capped). Requires a connected chordal graph.
std::vector<EliminationOrder> mcs_orderings(const Graph& g, bool all);

}  // namespace mrf

#endif
