#ifndef MRF_INDEXING_HPP
#define MRF_INDEXING_HPP

#include <cstddef>
#include <vector>

#include "mrf/dist.hpp"

namespace mrf {

// Validated copy of a vertex set: sorted, deduplicated, all in 1..N.
std::vector<int> checked_vertex_set(std::vector<int> vertices, int vertex_count,
                                    bool allow_empty);

// For each vertex v (index v-1): the stride of v's coordinate in the
// alphabet restricted to `vertices`, or 0 when v is dropped. The projected
// index of a full configuration is the dot product with its digits.
std::vector<std::size_t> projection_strides(const AlphabetSpec& full,
                                            const std::vector<int>& vertices);

// Mixed-radix odometer step matching AlphabetSpec's index order (last
// coordinate fastest).
void advance_config(std::vector<int>& digits, const AlphabetSpec& a);

}  // namespace mrf

#endif
