#ifndef MRF_INFO_HPP
#define MRF_INFO_HPP

#include <optional>
#include <vector>

#include "mrf/gibbs.hpp"
#include "mrf/lumping.hpp"

namespace mrf {

// Entropy of the joint law of (X_A, Y_B) computed directly from t, with
// Y = g(X) applied coordinate-wise. A and B may overlap.
double mixed_entropy(const JointTable& t, const Lumping& lump, const std::vector<int>& x_set,
                     const std::vector<int>& y_set);

struct Prop2Result {
    std::vector<double> residuals;  // H(Y_i|Y_Ni) - H(Y_i|X_Ni), >= 0
    bool holds = false;
};

// Requires t to be an MRF on g.
Prop2Result prop2_condition(const JointTable& t, const Lumping& lump, const Graph& g,
                            double tol = kDefaultTol);

// Returns whether the assignment map C' is injective with every strictly
// dependent potential confined to a singleton clique (so no clique other
// than C'(i) can carry raw-coordinate dependence into vertex i's
// conditional); when that holds, the per-vertex entropy equalities are
// verified numerically (a failure is a bug, reported as an invariant
// violation).
bool prop3_check(const PotentialFamily& f, const Lumping& lump, const DependencyAssignment& d,
                 const JointTable& t, double tol = kDefaultTol);

struct PreservationResult {
    bool preserving = false;
    double residual_bits = 0.0;  // H(X|Y) = H(X) - H(Y)
};

PreservationResult is_information_preserving(const JointTable& t, const Lumping& lump,
                                             double tol = kDefaultTol);

// Per-vertex H(X_i | Y_i, X_Ni); all must vanish when the lumping preserves
// information. Requires t to be an MRF on g.
std::vector<double> necessary_condition(const JointTable& t, const Lumping& lump,
                                        const Graph& g, double tol = kDefaultTol);

// Searches every MCS tie-break ordering for one along which
// H(X_v | Y_v, X_prior-neighbors) vanishes at every position. Requires a
// connected chordal graph and an MRF table.
std::optional<EliminationOrder> sufficient_condition_chordal(const JointTable& t,
                                                             const Lumping& lump,
                                                             const Graph& g,
                                                             double tol = kDefaultTol);

// Sum of H(X_{v_i} | X_{A_{v_i}}) along the order; equals H(X) for MRFs on
// chordal graphs and is asserted to.
double chordal_entropy_decomposition(const JointTable& t, const Graph& g,
                                     const EliminationOrder& order, double tol = kDefaultTol);

struct ProofChainTerms {
    double h_y_given_x_neighbors;  // = H(Y_i | X_rest), asserted
    double h_y_given_y_rest;
    double h_y_given_y_neighbors;
};

// Diagnostic: the chain H(Y_i|X_Ni) = H(Y_i|X_rest) <= H(Y_i|Y_rest)
// <= H(Y_i|Y_Ni), verified per vertex.
std::vector<ProofChainTerms> proof_chain_prop2(const JointTable& t, const Lumping& lump,
                                               const Graph& g, double tol = kDefaultTol);

struct InfoReport {
    PreservationResult preservation;
    bool input_is_mrf = false;
    std::vector<double> necessary_residuals;            // when input_is_mrf
    std::vector<double> prop2_residuals;                // when input_is_mrf
    bool prop2_holds = false;
    bool chordal_applicable = false;                    // chordal, connected, MRF
    std::optional<EliminationOrder> sufficient_witness; // when applicable
};

InfoReport info_report(const JointTable& t, const Lumping& lump, const Graph& g,
                       double tol = kDefaultTol);

}  // namespace mrf

#endif
