#include "mrf/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "mrf/error.hpp"
#include "mrf/indexing.hpp"

namespace mrf {

namespace {

std::string set_to_string(const std::vector<int>& vs) {
    std::string out = "{";
    for (std::size_t k = 0; k < vs.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(vs[k]);
    }
    return out + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// PotentialTable / PotentialFamily

PotentialTable PotentialTable::exact(std::vector<Rat> values) {
    for (const Rat& v : values)
        if (v <= 0) fail(ErrorCode::NonPositivePotential, "potential entry " + rat_to_string(v));
    PotentialTable t;
    t.mode_ = Mode::Exact;
    t.exact_ = std::move(values);
    return t;
}

PotentialTable PotentialTable::dense(std::vector<double> values) {
    for (double v : values)
        if (!(v > 0.0)) fail(ErrorCode::NonPositivePotential, "potential entry " + format_real(v));
    PotentialTable t;
    t.mode_ = Mode::Float;
    t.approx_ = std::move(values);
    return t;
}

std::size_t PotentialTable::size() const {
    return mode_ == Mode::Exact ? exact_.size() : approx_.size();
}

Rat PotentialTable::value_exact(std::size_t index) const { return exact_.at(index); }

double PotentialTable::value_as_double(std::size_t index) const {
    return mode_ == Mode::Exact ? rat_to_double(exact_.at(index)) : approx_.at(index);
}

PotentialTable PotentialTable::scaled(const Scalar& factor) const {
    if (mode_ == Mode::Exact && factor.mode == Mode::Exact) {
        std::vector<Rat> out = exact_;
        for (Rat& v : out) v *= factor.exact;
        return PotentialTable::exact(std::move(out));
    }
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = value_as_double(i) * factor.as_double();
    return PotentialTable::dense(std::move(out));
}

PotentialFamily::PotentialFamily(Graph graph, AlphabetSpec alphabet,
                                 std::map<Clique, PotentialTable> potentials)
    : graph_(std::move(graph)), alphabet_(std::move(alphabet)), potentials_(std::move(potentials)) {
    if (alphabet_.vertex_count() != graph_.vertex_count())
        fail(ErrorCode::Inconsistent, "alphabet and graph vertex counts differ");
    mode_ = Mode::Exact;
    bool first = true;
    for (const auto& [c, table] : potentials_) {
        if (!is_clique(graph_, c))
            fail(ErrorCode::Inconsistent, "potential key " + set_to_string(c) + " is not a clique");
        std::size_t expect = 1;
        for (int v : c) expect *= alphabet_.cardinality(v);
        if (table.size() != expect)
            fail(ErrorCode::Inconsistent,
                 "potential table for " + set_to_string(c) + " has the wrong size");
        if (first) {
            mode_ = table.mode();
            first = false;
        } else if (table.mode() != mode_) {
            fail(ErrorCode::Inconsistent, "potential family mixes exact and float tables");
        }
    }
}

std::size_t PotentialFamily::clique_index(const Clique& c, const std::vector<int>& config) const {
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (std::size_t k = c.size(); k-- > 0;) {
        idx += stride * static_cast<std::size_t>(config[static_cast<std::size_t>(c[k] - 1)]);
        stride *= alphabet_.cardinality(c[k]);
    }
    return idx;
}

Scalar PotentialFamily::value(const Clique& c, const std::vector<int>& config) const {
    auto it = potentials_.find(c);
    if (it == potentials_.end())
        return mode_ == Mode::Exact ? Scalar::of(Rat(1)) : Scalar::of(1.0);
    std::size_t idx = clique_index(c, config);
    if (mode_ == Mode::Exact) return Scalar::of(it->second.value_exact(idx));
    return Scalar::of(it->second.value_as_double(idx));
}

Scalar PotentialFamily::product_over_cliques(const std::vector<int>& config) const {
    if (mode_ == Mode::Exact) {
        Rat prod = 1;
        for (const auto& [c, table] : potentials_) prod *= table.value_exact(clique_index(c, config));
        return Scalar::of(std::move(prod));
    }
    double prod = 1.0;
    for (const auto& [c, table] : potentials_) prod *= table.value_as_double(clique_index(c, config));
    return Scalar::of(prod);
}

PotentialFamily PotentialFamily::with_potential(const Clique& c, PotentialTable table) const {
    std::map<Clique, PotentialTable> pots = potentials_;
    pots.insert_or_assign(c, std::move(table));
    return PotentialFamily(graph_, alphabet_, std::move(pots));
}

// ---------------------------------------------------------------------------
// partition function / synthesis

Scalar partition_function(const PotentialFamily& f) {
    const AlphabetSpec& a = f.alphabet();
    std::vector<int> digits(static_cast<std::size_t>(a.vertex_count()), 0);
    if (f.mode() == Mode::Exact) {
        Rat z = 0;
        for (std::size_t idx = 0; idx < a.total_configurations(); ++idx, advance_config(digits, a))
            z += f.product_over_cliques(digits).exact;
        return Scalar::of(std::move(z));
    }
    double z = 0.0;
    for (std::size_t idx = 0; idx < a.total_configurations(); ++idx, advance_config(digits, a))
        z += f.product_over_cliques(digits).approx;
    return Scalar::of(z);
}

JointTable synthesize_pmf(const PotentialFamily& f) {
    const AlphabetSpec& a = f.alphabet();
    Scalar z = partition_function(f);
    std::vector<int> digits(static_cast<std::size_t>(a.vertex_count()), 0);
    if (f.mode() == Mode::Exact) {
        std::vector<Rat> w(a.total_configurations());
        for (std::size_t idx = 0; idx < w.size(); ++idx, advance_config(digits, a))
            w[idx] = f.product_over_cliques(digits).exact / z.exact;
        return JointTable::exact(a, std::move(w));
    }
    std::vector<double> w(a.total_configurations());
    for (std::size_t idx = 0; idx < w.size(); ++idx, advance_config(digits, a))
        w[idx] = f.product_over_cliques(digits).approx / z.approx;
    return JointTable::dense(a, std::move(w));
}

// ---------------------------------------------------------------------------
// canonical potentials

namespace {

// All nonempty vertex subsets in canonical clique order.
std::vector<std::vector<int>> all_vertex_subsets(int n) {
    std::vector<std::vector<int>> out;
    out.reserve((1u << n) - 1);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) s.push_back(v + 1);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), clique_less);
    return out;
}

}  // namespace

PotentialFamily fit_canonical_potentials(const JointTable& t, const Graph& g, double tol) {
    const AlphabetSpec& a = t.alphabet();
    const int n = a.vertex_count();
    if (n != g.vertex_count())
        fail(ErrorCode::Inconsistent, "alphabet and graph vertex counts differ");
    if (!t.strictly_positive())
        fail(ErrorCode::NonPositiveTable,
             "canonical potentials require a strictly positive table");
    if (n > 16 || a.total_configurations() > 1'000'000)
        fail(ErrorCode::SizeCap, "canonical fit is limited to 16 vertices / 10^6 configurations");

    std::vector<Clique> cliques = enumerate_cliques(g);
    std::set<Clique> clique_set(cliques.begin(), cliques.end());
    const bool exact = t.mode() == Mode::Exact;

    std::map<Clique, PotentialTable> result;
    for (const std::vector<int>& subset : all_vertex_subsets(n)) {
        const bool in_cliques = clique_set.count(subset) > 0;
        AlphabetSpec sub = a.restrict_to(subset);
        std::vector<Rat> exact_vals;
        std::vector<double> float_vals;
        if (in_cliques) {
            if (exact)
                exact_vals.resize(sub.total_configurations());
            else
                float_vals.resize(sub.total_configurations());
        }

        std::vector<int> local(subset.size(), 0);
        for (std::size_t li = 0; li < sub.total_configurations(); ++li, advance_config(local, sub)) {
            // Moebius alternating product over sub-subsets, anchored at the
            // first symbol of every vertex.
            Rat ratio = 1;
            double logq = 0.0;
            const std::uint32_t bits = static_cast<std::uint32_t>(subset.size());
            for (std::uint32_t smask = 0; smask < (1u << bits); ++smask) {
                std::vector<int> full(static_cast<std::size_t>(n), 0);
                int picked = 0;
                for (std::uint32_t b = 0; b < bits; ++b)
                    if (smask & (1u << b)) {
                        full[static_cast<std::size_t>(subset[b] - 1)] = local[b];
                        ++picked;
                    }
                const bool positive_sign = ((static_cast<int>(bits) - picked) % 2) == 0;
                std::size_t idx = a.index_of(full);
                if (exact) {
                    if (positive_sign)
                        ratio *= t.weight_exact(idx);
                    else
                        ratio /= t.weight_exact(idx);
                } else {
                    double lw = std::log2(t.weight_float(idx));
                    logq += positive_sign ? lw : -lw;
                }
            }
            if (in_cliques) {
                if (exact)
                    exact_vals[li] = ratio;
                else
                    float_vals[li] = std::exp2(logq);
            } else {
                const bool vanishes = exact ? ratio == 1 : std::abs(logq) <= tol;
                if (!vanishes)
                    throw NotMrfError(
                        "table does not factor over the graph's cliques; canonical "
                        "potential on non-clique " + set_to_string(subset) + " is nonzero",
                        subset);
            }
        }
        if (in_cliques) {
            if (exact)
                result.emplace(subset, PotentialTable::exact(std::move(exact_vals)));
            else
                result.emplace(subset, PotentialTable::dense(std::move(float_vals)));
        }
    }
    return PotentialFamily(g, a, std::move(result));
}

// ---------------------------------------------------------------------------
// per-coordinate dependence

bool depends_only_via(const PotentialFamily& f, const Clique& c, int vertex,
                      const Lumping& lump, double tol) {
    if (!std::binary_search(c.begin(), c.end(), vertex))
        fail(ErrorCode::Inconsistent,
             "vertex " + std::to_string(vertex) + " is not in clique " + set_to_string(c));
    if (!f.potentials().count(c)) return true;  // constant-one potential

    const AlphabetSpec& a = f.alphabet();
    AlphabetSpec sub = a.restrict_to(c);
    std::size_t pos = static_cast<std::size_t>(
        std::find(c.begin(), c.end(), vertex) - c.begin());
    const bool exact = f.mode() == Mode::Exact;

    std::vector<int> local(c.size(), 0);
    std::vector<int> full(static_cast<std::size_t>(a.vertex_count()), 0);
    for (std::size_t li = 0; li < sub.total_configurations(); ++li, advance_config(local, sub)) {
        int d = local[pos];
        int rep = lump.preimage(vertex, lump.map(vertex, d)).front();
        if (rep == d) continue;
        for (std::size_t k = 0; k < c.size(); ++k)
            full[static_cast<std::size_t>(c[k] - 1)] = local[k];
        Scalar lhs = f.value(c, full);
        full[static_cast<std::size_t>(vertex - 1)] = rep;
        Scalar rhs = f.value(c, full);
        if (exact) {
            if (lhs.exact != rhs.exact) return false;
        } else {
            double x = lhs.approx, y = rhs.approx;
            if (std::abs(x - y) > tol * std::max(std::abs(x), std::abs(y))) return false;
        }
    }
    return true;
}

AssignOutcome assign_cliques(const PotentialFamily& f, const Lumping& lump, double tol) {
    const int n = f.graph().vertex_count();
    if (lump.domain().vertex_count() != n || !(lump.domain() == f.alphabet()))
        fail(ErrorCode::Inconsistent, "lumping and family alphabets differ");

    AssignOutcome out;
    std::vector<Clique> chosen(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        std::vector<Clique> strict;
        for (const auto& [c, table] : f.potentials()) {
            (void)table;
            if (!std::binary_search(c.begin(), c.end(), i)) continue;
            if (!depends_only_via(f, c, i, lump, tol)) strict.push_back(c);
        }
        if (strict.size() > 1) {
            std::sort(strict.begin(), strict.end(), clique_less);
            out.conflicts.push_back({i, std::move(strict)});
            continue;
        }
        // The canonically smallest clique containing i is the singleton {i}.
        chosen[static_cast<std::size_t>(i - 1)] = strict.size() == 1 ? strict[0] : Clique{i};
    }
    if (!out.conflicts.empty()) return out;

    DependencyAssignment d;
    d.assignment = std::move(chosen);
    std::map<Clique, std::vector<int>> fibers;
    for (int i = 1; i <= n; ++i)
        fibers[d.assignment[static_cast<std::size_t>(i - 1)]].push_back(i);
    std::vector<Clique> keys;
    for (const auto& [c, members] : fibers) {
        (void)members;
        keys.push_back(c);
    }
    std::sort(keys.begin(), keys.end(), clique_less);
    for (const Clique& c : keys) {
        d.class_cliques.push_back(c);
        d.classes.push_back(fibers[c]);
    }
    out.assignment = std::move(d);
    return out;
}

}  // namespace mrf
