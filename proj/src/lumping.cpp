#include "mrf/lumping.hpp"

#include <algorithm>

#include "mrf/error.hpp"

namespace mrf {

Lumping::Lumping(AlphabetSpec domain, AlphabetSpec codomain, std::vector<std::vector<int>> map)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), map_(std::move(map)) {
    preimages_.resize(map_.size());
    for (std::size_t v = 0; v < map_.size(); ++v) {
        preimages_[v].assign(codomain_.cardinality(static_cast<int>(v + 1)), {});
        for (std::size_t x = 0; x < map_[v].size(); ++x)
            preimages_[v][static_cast<std::size_t>(map_[v][x])].push_back(static_cast<int>(x));
        for (const auto& pre : preimages_[v])
            if (pre.empty())
                fail(ErrorCode::Inconsistent, "lumping output symbol with empty preimage");
    }
}

Lumping Lumping::from_symbol_maps(const AlphabetSpec& domain,
                                  const std::vector<std::map<std::string, std::string>>& maps) {
    const int n = domain.vertex_count();
    if (maps.size() != static_cast<std::size_t>(n))
        fail(ErrorCode::Inconsistent, "lumping needs one map per vertex");
    std::vector<std::vector<int>> index_map(static_cast<std::size_t>(n));
    std::vector<std::vector<std::string>> out_symbols(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) {
        const auto& m = maps[static_cast<std::size_t>(v - 1)];
        const auto& syms = domain.symbols(v);
        for (const auto& [from, to] : m) {
            (void)to;
            if (!domain.symbol_index(v, from))
                fail(ErrorCode::Schema, "lumping for vertex " + std::to_string(v) +
                                            " mentions unknown symbol '" + from + "'");
        }
        std::vector<std::string>& ys = out_symbols[static_cast<std::size_t>(v - 1)];
        std::vector<int>& idx = index_map[static_cast<std::size_t>(v - 1)];
        idx.reserve(syms.size());
        for (const std::string& s : syms) {
            auto it = m.find(s);
            if (it == m.end())
                fail(ErrorCode::PartialMap, "lumping for vertex " + std::to_string(v) +
                                                " does not map symbol '" + s + "'");
            auto pos = std::find(ys.begin(), ys.end(), it->second);
            if (pos == ys.end()) {
                ys.push_back(it->second);
                idx.push_back(static_cast<int>(ys.size() - 1));
            } else {
                idx.push_back(static_cast<int>(pos - ys.begin()));
            }
        }
    }
    return Lumping(domain, AlphabetSpec(std::move(out_symbols)), std::move(index_map));
}

Lumping Lumping::identity(const AlphabetSpec& domain) {
    std::vector<std::map<std::string, std::string>> maps(
        static_cast<std::size_t>(domain.vertex_count()));
    for (int v = 1; v <= domain.vertex_count(); ++v)
        for (const std::string& s : domain.symbols(v))
            maps[static_cast<std::size_t>(v - 1)][s] = s;
    return from_symbol_maps(domain, maps);
}

int Lumping::map(int vertex, int x_index) const {
    return map_.at(static_cast<std::size_t>(vertex - 1)).at(static_cast<std::size_t>(x_index));
}

const std::vector<std::vector<int>>& Lumping::preimages(int vertex) const {
    return preimages_.at(static_cast<std::size_t>(vertex - 1));
}

const std::vector<int>& Lumping::preimage(int vertex, int y_index) const {
    return preimages(vertex).at(static_cast<std::size_t>(y_index));
}

bool Lumping::injective_at(int vertex) const {
    for (const auto& pre : preimages(vertex))
        if (pre.size() > 1) return false;
    return true;
}

std::vector<int> Lumping::apply(const std::vector<int>& x_config) const {
    std::vector<int> y(x_config.size());
    for (std::size_t v = 0; v < x_config.size(); ++v)
        y[v] = map(static_cast<int>(v + 1), x_config[v]);
    return y;
}

std::size_t Lumping::apply_index(std::size_t x_index) const {
    return codomain_.index_of(apply(domain_.config_at(x_index)));
}

Lumping Lumping::then(const Lumping& g2) const {
    if (!(g2.domain() == codomain_))
        fail(ErrorCode::Inconsistent, "composition domains do not line up");
    std::vector<std::map<std::string, std::string>> maps(map_.size());
    for (int v = 1; v <= domain_.vertex_count(); ++v) {
        for (std::size_t x = 0; x < domain_.cardinality(v); ++x) {
            int y = map(v, static_cast<int>(x));
            int z = g2.map(v, y);
            maps[static_cast<std::size_t>(v - 1)][domain_.symbols(v)[x]] =
                g2.codomain().symbols(v)[static_cast<std::size_t>(z)];
        }
    }
    return from_symbol_maps(domain_, maps);
}

bool is_nontrivial(const Lumping& lump) {
    for (int v = 1; v <= lump.domain().vertex_count(); ++v)
        if (!lump.injective_at(v)) return true;
    return false;
}

}  // namespace mrf
