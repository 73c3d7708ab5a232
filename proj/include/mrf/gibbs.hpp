#ifndef MRF_GIBBS_HPP
#define MRF_GIBBS_HPP

#include <map>
#include <optional>
#include <vector>

#include "mrf/dist.hpp"
#include "mrf/lumping.hpp"

namespace mrf {

// Mode-tagged scalar, used for partition-function values and potential
// entries so exact families stay exact end to end.
struct Scalar {
    Mode mode = Mode::Float;
    Rat exact;
    double approx = 0.0;

    static Scalar of(Rat r) { return {Mode::Exact, std::move(r), 0.0}; }
    static Scalar of(double d) { return {Mode::Float, Rat(0), d}; }
    double as_double() const { return mode == Mode::Exact ? rat_to_double(exact) : approx; }
};

// Dense positive table over a clique's product alphabet (clique vertices in
// ascending order, first vertex most significant).
class PotentialTable {
  public:
    static PotentialTable exact(std::vector<Rat> values);
    static PotentialTable dense(std::vector<double> values);

    Mode mode() const { return mode_; }
    std::size_t size() const;
    Rat value_exact(std::size_t index) const;
    double value_as_double(std::size_t index) const;
    PotentialTable scaled(const Scalar& factor) const;

  private:
    Mode mode_;
    std::vector<Rat> exact_;
    std::vector<double> approx_;
};

// Clique-indexed potential family; absent cliques mean the constant-one
// potential. Every stored table must be strictly positive.
class PotentialFamily {
  public:
    PotentialFamily(Graph graph, AlphabetSpec alphabet,
                    std::map<Clique, PotentialTable> potentials);

    const Graph& graph() const { return graph_; }
    const AlphabetSpec& alphabet() const { return alphabet_; }
    const std::map<Clique, PotentialTable>& potentials() const { return potentials_; }
    Mode mode() const { return mode_; }

    // Index of a full configuration's restriction to the clique.
    std::size_t clique_index(const Clique& c, const std::vector<int>& config) const;

    Scalar value(const Clique& c, const std::vector<int>& config) const;
    Scalar product_over_cliques(const std::vector<int>& config) const;

    PotentialFamily with_potential(const Clique& c, PotentialTable table) const;

  private:
    Graph graph_;
    AlphabetSpec alphabet_;
    std::map<Clique, PotentialTable> potentials_;
    Mode mode_;
};

Scalar partition_function(const PotentialFamily& f);

JointTable synthesize_pmf(const PotentialFamily& f);

// Canonical potentials anchored at each vertex's first symbol. Requires a
// strictly positive table; raises NotMrfError (naming the offending vertex
// set) when the table does not factor over the graph's cliques.
PotentialFamily fit_canonical_potentials(const JointTable& t, const Graph& g,
                                         double tol = kDefaultTol);

// True when psi_C's value never distinguishes two symbols of vertex i that
// the lumping merges, for any setting of the other clique coordinates.
bool depends_only_via(const PotentialFamily& f, const Clique& c, int vertex,
                      const Lumping& lump, double tol = kDefaultTol);

struct DependencyAssignment {
    std::vector<Clique> assignment;          // per vertex: C'(i)
    std::vector<std::vector<int>> classes;   // fibers V_1..V_L, canonical order
    std::vector<Clique> class_cliques;       // C'(V_l) per class

    bool injective() const { return classes.size() == assignment.size(); }
};

struct StrictDependencyConflict {
    int vertex;
    std::vector<Clique> strict_cliques;
};

// Failure is a legitimate structured outcome, not an exception.
struct AssignOutcome {
    std::optional<DependencyAssignment> assignment;
    std::vector<StrictDependencyConflict> conflicts;

    bool ok() const { return assignment.has_value(); }
};

AssignOutcome assign_cliques(const PotentialFamily& f, const Lumping& lump,
                             double tol = kDefaultTol);

}  // namespace mrf

#endif
