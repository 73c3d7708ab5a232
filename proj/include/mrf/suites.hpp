#ifndef MRF_SUITES_HPP
#define MRF_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mrf/instance.hpp"

namespace mrf {

struct SuiteResult {
    std::string name;
    int instances = 0;
    int fired = 0;  // instances where the certificate/witness branch applied
    int failures = 0;
    std::vector<std::string> messages;

    bool pass() const { return failures == 0 && instances > 0; }
};

// Lumped-potential construction: assignment succeeds, the U product equals
// Z * p_Y exactly, and the pushforward is an MRF on the input graph.
SuiteResult run_lumped_potentials_suite(std::uint64_t seed, int count);

// Whenever the per-vertex entropy condition holds, brute force agrees that
// the pushforward is an MRF.
SuiteResult run_entropy_condition_suite(std::uint64_t seed, int count);

// Injective clique assignments equalize H(Y_i|Y_Ni) and H(Y_i|X_Ni);
// `count` counts the injective instances actually checked.
SuiteResult run_injective_assignment_suite(std::uint64_t seed, int count);

// Preserving lumpings satisfy the per-vertex zero-entropy conditions.
SuiteResult run_preservation_necessary_suite(std::uint64_t seed, int count);

// A chordal elimination witness implies zero residual entropy.
SuiteResult run_preservation_sufficient_suite(std::uint64_t seed, int count);

// The elimination-order entropy decomposition matches H(X) for every MCS
// tie-break on chordal instances.
SuiteResult run_decomposition_suite(std::uint64_t seed, int count);

// Canonical-potential round trip on positive families, plus the error path
// on a graph missing a coupled edge.
SuiteResult run_canonical_roundtrip_suite(std::uint64_t seed, int count);

// Definitional and entropy-based MRF checks agree.
SuiteResult run_oracle_suite(std::uint64_t seed, int count);

// The bundled fixtures reproduce their documented verdicts.
SuiteResult run_examples_suite();

}  // namespace mrf

#endif
