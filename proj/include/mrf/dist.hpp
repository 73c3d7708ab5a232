#ifndef MRF_DIST_HPP
#define MRF_DIST_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrf/graph.hpp"
#include "mrf/rational.hpp"

namespace mrf {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kSupportEps = 1e-12;
inline constexpr std::size_t kStateSpaceCap = 10'000'000;

// Per-vertex symbol lists. Configurations are indexed mixed-radix with
// vertex 1 most significant and vertex N fastest-varying.
class AlphabetSpec {
  public:
    explicit AlphabetSpec(std::vector<std::vector<std::string>> symbols);

    int vertex_count() const { return static_cast<int>(symbols_.size()); }
    std::size_t cardinality(int vertex) const;
    const std::vector<std::string>& symbols(int vertex) const;
    std::optional<int> symbol_index(int vertex, std::string_view symbol) const;

    std::size_t total_configurations() const { return total_; }

    std::size_t index_of(const std::vector<int>& config) const;
    std::vector<int> config_at(std::size_t index) const;
    std::vector<std::string> labels_at(std::size_t index) const;

    // Sub-alphabet over the given (sorted) vertices, renumbered 1..|A|.
    AlphabetSpec restrict_to(const std::vector<int>& vertices) const;

    bool operator==(const AlphabetSpec& other) const { return symbols_ == other.symbols_; }

  private:
    std::vector<std::vector<std::string>> symbols_;
    std::vector<std::size_t> strides_;
    std::size_t total_;
};

enum class Mode { Exact, Float };

// Dense joint probability table over the product alphabet. Exact tables
// carry rationals and all zero/equality tests are exact; float tables use
// the module tolerances.
class JointTable {
  public:
    static JointTable exact(AlphabetSpec alphabet, std::vector<Rat> weights);
    static JointTable dense(AlphabetSpec alphabet, std::vector<double> weights);

    Mode mode() const { return mode_; }
    const AlphabetSpec& alphabet() const { return alphabet_; }
    std::size_t size() const;

    const Rat& weight_exact(std::size_t index) const;
    double weight_float(std::size_t index) const;
    double weight_as_double(std::size_t index) const;
    bool is_zero(std::size_t index) const;

    bool strictly_positive() const;
    JointTable to_float() const;

    bool same_distribution(const JointTable& other, double tol = kDefaultTol) const;

  private:
    JointTable(AlphabetSpec alphabet, Mode mode) : alphabet_(std::move(alphabet)), mode_(mode) {}

    AlphabetSpec alphabet_;
    Mode mode_;
    std::vector<Rat> exact_;
    std::vector<double> approx_;
};

JointTable marginal(const JointTable& t, const std::vector<int>& vertices);

// Normalized slice over `target` given fixed symbols for `given`.
JointTable conditional(const JointTable& t, const std::vector<int>& target,
                       const std::vector<int>& given,
                       const std::vector<std::string>& given_symbols);

// Entropies are always computed in doubles, base 2, with 0 log 0 := 0.
double entropy(const JointTable& t, const std::vector<int>& vertices);
double entropy(const JointTable& t);
double conditional_entropy(const JointTable& t, const std::vector<int>& a,
                           const std::vector<int>& b);

enum class MrfMethod { Definition, Entropy };

struct MrfWitness {
    int vertex;
    std::vector<std::string> config;
};

struct MrfVerdict {
    bool holds = false;
    std::vector<double> residuals;  // per vertex
    std::optional<MrfWitness> witness;
};

MrfVerdict is_mrf(const JointTable& t, const Graph& g, MrfMethod method,
                  double tol = kDefaultTol);

// Configuration indices with positive weight.
std::vector<std::size_t> support(const JointTable& t);

}  // namespace mrf

#endif
