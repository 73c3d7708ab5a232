#ifndef MRF_LUMPING_HPP
#define MRF_LUMPING_HPP

#include <map>
#include <string>
#include <vector>

#include "mrf/dist.hpp"

namespace mrf {

// Per-vertex coordinate maps g_i applied to an MRF's alphabet. The output
// alphabet is exactly the image of each map (surjective by construction),
// with output symbols ordered by first appearance over the input order.
class Lumping {
  public:
    // maps[v][x] = index of g_{v+1}(x-th symbol) in the derived output alphabet
    static Lumping from_symbol_maps(const AlphabetSpec& domain,
                                    const std::vector<std::map<std::string, std::string>>& maps);
    static Lumping identity(const AlphabetSpec& domain);

    const AlphabetSpec& domain() const { return domain_; }
    const AlphabetSpec& codomain() const { return codomain_; }

    int map(int vertex, int x_index) const;
    const std::vector<std::vector<int>>& preimages(int vertex) const;
    const std::vector<int>& preimage(int vertex, int y_index) const;

    bool injective_at(int vertex) const;

    std::vector<int> apply(const std::vector<int>& x_config) const;
    std::size_t apply_index(std::size_t x_index) const;

    // g2 after this; used for composition laws in tests.
    Lumping then(const Lumping& g2) const;

  private:
    Lumping(AlphabetSpec domain, AlphabetSpec codomain, std::vector<std::vector<int>> map);

    AlphabetSpec domain_;
    AlphabetSpec codomain_;
    std::vector<std::vector<int>> map_;                  // per vertex: x index -> y index
    std::vector<std::vector<std::vector<int>>> preimages_;  // per vertex, per y index
};

bool is_nontrivial(const Lumping& lump);

}  // namespace mrf

#endif
