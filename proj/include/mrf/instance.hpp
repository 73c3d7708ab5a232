#ifndef MRF_INSTANCE_HPP
#define MRF_INSTANCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mrf/gibbs.hpp"
#include "mrf/lump.hpp"

namespace mrf {

// A parsed analysis instance: graph + alphabet + a distribution given either
// as a table or as a potential family, plus an optional lumping.
struct Instance {
    std::string name;
    Graph graph;
    AlphabetSpec alphabet;
    std::vector<std::string> variable_names;
    std::variant<JointTable, PotentialFamily> source;
    std::optional<Lumping> lumping;

    JointTable table() const;
    const PotentialFamily* family() const;
};

struct ParseOptions {
    bool force_exact = false;  // convert numeric literals to exact rationals
};

Instance parse_instance_json(const nlohmann::json& doc, const ParseOptions& opts = {});
Instance parse_instance(const std::string& path, const ParseOptions& opts = {});
nlohmann::ordered_json serialize_instance(const Instance& instance);

// Bundled fixtures: example1..example5, infoloss, mc_remark.
Instance builtin_fixture(const std::string& name);
const std::vector<std::string>& builtin_fixture_names();

// The alternative potential family for the example4 instance in which the
// square root of the vertex-2 singleton potential is pushed into both edge
// potentials; it represents the same distribution but has two strictly
// dependent cliques at vertex 2.
PotentialFamily example4_rewritten_family();

struct GenLimits {
    int max_vertices = 4;
    int max_alphabet = 3;
};

// Deterministic for a fixed seed. Profiles: "generic" (MRF instances mixing
// positive Gibbs fields, tree-factored tables with zeros, and sparse tables
// on complete graphs), "prop1" (family built so every vertex has at most one
// strictly dependent clique), "chordal" (positive MRF on a random chordal
// graph).
Instance random_instance(std::uint64_t seed, const std::string& profile,
                         const GenLimits& limits = {});

}  // namespace mrf

#endif
