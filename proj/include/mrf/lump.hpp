#ifndef MRF_LUMP_HPP
#define MRF_LUMP_HPP

#include <optional>
#include <string>
#include <vector>

#include "mrf/gibbs.hpp"
#include "mrf/lumping.hpp"

namespace mrf {

// p_Y(y) = sum of p_X over the product preimage of y; mass-preserving.
JointTable pushforward(const JointTable& t, const Lumping& lump);

// Eq-style shortcut: every clique potential constant on every full preimage.
bool constant_on_preimages(const PotentialFamily& f, const Lumping& lump,
                           double tol = kDefaultTol);

// Lumped potential family U over the output alphabet: assigned cliques sum
// psi over the class preimage, untouched cliques are relabeled. The product
// of U over cliques equals Z * p_Y with the input family's Z.
PotentialFamily lumped_potentials(const PotentialFamily& f, const Lumping& lump,
                                  const DependencyAssignment& d, double tol = kDefaultTol);

enum class Certificate { None, AllEqual, Prop1, Prop2 };

const char* certificate_name(Certificate c);

struct LumpabilityReport {
    bool is_lumpable = false;
    Certificate certificate = Certificate::None;
    std::string note;
    MrfVerdict brute;                       // is_mrf(p_Y, g)
    MrfVerdict input_mrf;                   // is_mrf(p_X, g)
    std::optional<PotentialFamily> lumped;  // U family, when a potential certificate fired
    std::optional<std::vector<Graph>> minimal_graphs;
};

struct LumpOptions {
    bool want_minimal_graphs = false;
    double tol = kDefaultTol;
};

LumpabilityReport check_lumpable(const JointTable& t, const Lumping& lump, const Graph& g,
                                 const std::optional<PotentialFamily>& f,
                                 const LumpOptions& opts = {});

// All inclusion-minimal graphs on which t is an MRF; exactly one element
// for strictly positive tables.
std::vector<Graph> minimal_graphs(const JointTable& t, double tol = kDefaultTol);

}  // namespace mrf

#endif
