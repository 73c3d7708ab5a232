#include "mrf/info.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "mrf/error.hpp"
#include "mrf/indexing.hpp"

namespace mrf {

namespace {

double xlog2x(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

void require_mrf(const JointTable& t, const Graph& g, double tol, const char* who) {
    // entropy form of the membership test; equivalent verdict, cheaper scan
    if (!is_mrf(t, g, MrfMethod::Entropy, tol).holds)
        fail(ErrorCode::NotMrf, std::string(who) + " requires the table to be an MRF on the graph");
}

std::vector<int> all_vertices(int n) {
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) out[static_cast<std::size_t>(v - 1)] = v;
    return out;
}

}  // namespace

double mixed_entropy(const JointTable& t, const Lumping& lump, const std::vector<int>& x_set,
                     const std::vector<int>& y_set) {
    const AlphabetSpec& a = t.alphabet();
    const AlphabetSpec& ycod = lump.codomain();
    const int n = a.vertex_count();
    std::vector<int> xs = checked_vertex_set(x_set, n, true);
    std::vector<int> ys = checked_vertex_set(y_set, n, true);

    // strides: x coordinates most significant, then y coordinates
    std::size_t y_size = 1;
    std::vector<std::size_t> ystride(static_cast<std::size_t>(n), 0);
    for (std::size_t k = ys.size(); k-- > 0;) {
        ystride[static_cast<std::size_t>(ys[k] - 1)] = y_size;
        y_size *= ycod.cardinality(ys[k]);
    }
    std::size_t out_size = y_size;
    std::vector<std::size_t> xstride(static_cast<std::size_t>(n), 0);
    for (std::size_t k = xs.size(); k-- > 0;) {
        xstride[static_cast<std::size_t>(xs[k] - 1)] = out_size;
        out_size *= a.cardinality(xs[k]);
    }
    if (out_size > kStateSpaceCap)
        fail(ErrorCode::StateSpaceCap, "mixed marginal exceeds the state-space cap");

    // entropies are always double-valued; accumulate weights as doubles
    std::vector<double> weights(out_size, 0.0);
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < t.size(); ++idx, advance_config(digits, a)) {
        std::size_t proj = 0;
        for (std::size_t v = 0; v < digits.size(); ++v) {
            if (xstride[v]) proj += xstride[v] * static_cast<std::size_t>(digits[v]);
            if (ystride[v])
                proj += ystride[v] *
                        static_cast<std::size_t>(lump.map(static_cast<int>(v + 1), digits[v]));
        }
        weights[proj] += t.weight_as_double(idx);
    }

    double h = 0.0;
    for (double w : weights) h += xlog2x(w);
    return h;
}

namespace {

// H(Y_i | Y_B) etc., all through mixed_entropy
double h_y_given_y(const JointTable& t, const Lumping& l, int i, const std::vector<int>& b) {
    std::vector<int> join = b;
    join.push_back(i);
    return mixed_entropy(t, l, {}, join) - (b.empty() ? 0.0 : mixed_entropy(t, l, {}, b));
}

double h_y_given_x(const JointTable& t, const Lumping& l, int i, const std::vector<int>& b) {
    return mixed_entropy(t, l, b, {i}) - (b.empty() ? 0.0 : mixed_entropy(t, l, b, {}));
}

double h_x_given_y_and_x(const JointTable& t, const Lumping& l, int i,
                         const std::vector<int>& b) {
    std::vector<int> join = b;
    join.push_back(i);
    return mixed_entropy(t, l, join, {i}) - mixed_entropy(t, l, b, {i});
}

}  // namespace

Prop2Result prop2_condition(const JointTable& t, const Lumping& lump, const Graph& g,
                            double tol) {
    require_mrf(t, g, tol, "prop2_condition");
    const int n = g.vertex_count();
    Prop2Result out;
    out.holds = true;
    for (int i = 1; i <= n; ++i) {
        std::vector<int> nb = g.neighbors(i);
        double gap = h_y_given_y(t, lump, i, nb) - h_y_given_x(t, lump, i, nb);
        out.residuals.push_back(gap);
        if (gap > tol) out.holds = false;
        if (gap < -tol)
            fail(ErrorCode::InvariantViolation,
                 "data processing violated: H(Y_i|Y_Ni) < H(Y_i|X_Ni)");
    }
    return out;
}

bool prop3_check(const PotentialFamily& f, const Lumping& lump, const DependencyAssignment& d,
                 const JointTable& t, double tol) {
    if (!t.same_distribution(synthesize_pmf(f), tol))
        fail(ErrorCode::Inconsistent, "table does not match the family's distribution");
    if (static_cast<int>(d.assignment.size()) != f.graph().vertex_count())
        fail(ErrorCode::Inconsistent, "assignment does not cover every vertex");
    if (!d.injective()) return false;
    // A multi-vertex clique that strictly depends on some coordinate feeds
    // raw values into the conditionals of its other members, and the
    // entropy equalities can genuinely fail there; only singleton cliques
    // may be strict.
    for (const auto& [c, table] : f.potentials()) {
        (void)table;
        if (c.size() < 2) continue;
        for (int v : c)
            if (!depends_only_via(f, c, v, lump, tol)) return false;
    }
    Prop2Result r = prop2_condition(t, lump, f.graph(), tol);
    for (std::size_t i = 0; i < r.residuals.size(); ++i) {
        if (std::abs(r.residuals[i]) > tol)
            fail(ErrorCode::InvariantViolation,
                 "injective clique assignment must equalize H(Y_i|Y_Ni) and H(Y_i|X_Ni); "
                 "residual " + format_real(r.residuals[i]) + " at vertex " +
                     std::to_string(i + 1));
    }
    return true;
}

PreservationResult is_information_preserving(const JointTable& t, const Lumping& lump,
                                             double tol) {
    const int n = t.alphabet().vertex_count();
    PreservationResult out;
    double hx = entropy(t);
    double hy = mixed_entropy(t, lump, {}, all_vertices(n));
    out.residual_bits = hx - hy;

    // Exact characterization: g injective on the support.
    bool injective = true;
    std::vector<char> hit(lump.codomain().total_configurations(), 0);
    for (std::size_t idx : support(t)) {
        std::size_t y = lump.apply_index(idx);
        if (hit[y]) {
            injective = false;
            break;
        }
        hit[y] = 1;
    }

    if (injective && out.residual_bits > tol)
        fail(ErrorCode::InvariantViolation,
             "injective-on-support lumping lost entropy: " + format_real(out.residual_bits));
    if (t.mode() == Mode::Exact && !injective && out.residual_bits <= tol)
        fail(ErrorCode::InvariantViolation,
             "support collision with no measurable entropy loss in exact mode");
    out.preserving = injective;
    return out;
}

std::vector<double> necessary_condition(const JointTable& t, const Lumping& lump,
                                        const Graph& g, double tol) {
    require_mrf(t, g, tol, "necessary_condition");
    std::vector<double> out;
    for (int i = 1; i <= g.vertex_count(); ++i)
        out.push_back(h_x_given_y_and_x(t, lump, i, g.neighbors(i)));
    return out;
}

std::optional<EliminationOrder> sufficient_condition_chordal(const JointTable& t,
                                                             const Lumping& lump,
                                                             const Graph& g, double tol) {
    require_mrf(t, g, tol, "sufficient_condition_chordal");
    std::vector<EliminationOrder> orders = mcs_orderings(g, true);
    const double hx = entropy(t);

    // Orderings share most (vertex, prior-set) pairs; memoize both entropy
    // terms by bitmask.
    auto mask_of = [](const std::vector<int>& vs) {
        std::uint32_t m = 0;
        for (int v : vs) m |= 1u << (v - 1);
        return m;
    };
    std::map<std::uint32_t, double> joint_entropy;
    auto ent = [&](std::uint32_t mask) {
        if (mask == 0) return 0.0;
        auto it = joint_entropy.find(mask);
        if (it != joint_entropy.end()) return it->second;
        std::vector<int> vs;
        for (int v = 1; v <= g.vertex_count(); ++v)
            if (mask & (1u << (v - 1))) vs.push_back(v);
        double h = entropy(t, vs);
        joint_entropy.emplace(mask, h);
        return h;
    };
    std::map<std::pair<int, std::uint32_t>, double> term_cache;
    auto residual_term = [&](int v, const std::vector<int>& prior) {
        auto key = std::make_pair(v, mask_of(prior));
        auto it = term_cache.find(key);
        if (it != term_cache.end()) return it->second;
        double h = h_x_given_y_and_x(t, lump, v, prior);
        term_cache.emplace(key, h);
        return h;
    };

    for (const EliminationOrder& order : orders) {
        double sum = 0.0;
        for (std::size_t k = 0; k < order.permutation.size(); ++k) {
            std::uint32_t prior = mask_of(order.prior_neighbors[k]);
            sum += ent(prior | (1u << (order.permutation[k] - 1))) - ent(prior);
        }
        if (std::abs(sum - hx) > tol)
            fail(ErrorCode::InvariantViolation,
                 "chordal entropy decomposition failed along an MCS ordering");
        bool all_zero = true;
        for (std::size_t k = 0; k < order.permutation.size() && all_zero; ++k) {
            int v = order.permutation[k];
            if (residual_term(v, order.prior_neighbors[k]) > tol) all_zero = false;
        }
        if (all_zero) {
            if (!is_information_preserving(t, lump, tol).preserving)
                fail(ErrorCode::InvariantViolation,
                     "vanishing chordal condition on a non-preserving lumping");
            return order;
        }
    }
    return std::nullopt;
}

double chordal_entropy_decomposition(const JointTable& t, const Graph& g,
                                     const EliminationOrder& order, double tol) {
    const int n = g.vertex_count();
    if (static_cast<int>(order.permutation.size()) != n ||
        order.prior_neighbors.size() != order.permutation.size())
        fail(ErrorCode::InvalidOrder, "ordering does not cover the graph");
    require_mrf(t, g, tol, "chordal_entropy_decomposition");
    if (!is_chordal(g).chordal)
        fail(ErrorCode::NotChordal, "entropy decomposition requires a chordal graph");

    // Validate the permutation, the prior-neighbor sets, and MCS maximality.
    std::vector<bool> placed(static_cast<std::size_t>(n), false);
    std::vector<int> cardinality(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < order.permutation.size(); ++k) {
        int v = order.permutation[k];
        if (v < 1 || v > n || placed[static_cast<std::size_t>(v - 1)])
            fail(ErrorCode::InvalidOrder, "ordering is not a permutation of the vertices");
        int best = 0;
        for (int u = 1; u <= n; ++u)
            if (!placed[static_cast<std::size_t>(u - 1)])
                best = std::max(best, cardinality[static_cast<std::size_t>(u - 1)]);
        if (cardinality[static_cast<std::size_t>(v - 1)] != best)
            fail(ErrorCode::InvalidOrder, "ordering is not a maximum cardinality search order");
        std::vector<int> prior;
        for (int u : g.neighbors(v))
            if (placed[static_cast<std::size_t>(u - 1)]) prior.push_back(u);
        if (prior != order.prior_neighbors[k])
            fail(ErrorCode::InvalidOrder, "prior-neighbor set does not match the graph");
        placed[static_cast<std::size_t>(v - 1)] = true;
        for (int u : g.neighbors(v))
            if (!placed[static_cast<std::size_t>(u - 1)])
                ++cardinality[static_cast<std::size_t>(u - 1)];
    }

    double sum = 0.0;
    for (std::size_t k = 0; k < order.permutation.size(); ++k) {
        int v = order.permutation[k];
        const std::vector<int>& prior = order.prior_neighbors[k];
        sum += prior.empty() ? entropy(t, {v}) : conditional_entropy(t, {v}, prior);
    }
    if (std::abs(sum - entropy(t)) > tol)
        fail(ErrorCode::InvariantViolation,
             "entropy decomposition along an MCS ordering missed H(X) by " +
                 format_real(sum - entropy(t)));
    return sum;
}

std::vector<ProofChainTerms> proof_chain_prop2(const JointTable& t, const Lumping& lump,
                                               const Graph& g, double tol) {
    require_mrf(t, g, tol, "proof_chain_prop2");
    const int n = g.vertex_count();
    std::vector<ProofChainTerms> out;
    for (int i = 1; i <= n; ++i) {
        std::vector<int> nb = g.neighbors(i);
        std::vector<int> rest;
        for (int v = 1; v <= n; ++v)
            if (v != i) rest.push_back(v);
        ProofChainTerms terms;
        terms.h_y_given_x_neighbors = h_y_given_x(t, lump, i, nb);
        double via_rest = h_y_given_x(t, lump, i, rest);
        if (std::abs(terms.h_y_given_x_neighbors - via_rest) > tol)
            fail(ErrorCode::InvariantViolation,
                 "H(Y_i|X_Ni) must equal H(Y_i|X_rest) for an MRF input");
        terms.h_y_given_y_rest = h_y_given_y(t, lump, i, rest);
        terms.h_y_given_y_neighbors = h_y_given_y(t, lump, i, nb);
        if (terms.h_y_given_x_neighbors > terms.h_y_given_y_rest + tol ||
            terms.h_y_given_y_rest > terms.h_y_given_y_neighbors + tol)
            fail(ErrorCode::InvariantViolation, "entropy chain inequalities violated");
        out.push_back(terms);
    }
    return out;
}

InfoReport info_report(const JointTable& t, const Lumping& lump, const Graph& g, double tol) {
    InfoReport report;
    report.preservation = is_information_preserving(t, lump, tol);
    report.input_is_mrf = is_mrf(t, g, MrfMethod::Definition, tol).holds;
    if (report.input_is_mrf) {
        report.necessary_residuals = necessary_condition(t, lump, g, tol);
        Prop2Result p2 = prop2_condition(t, lump, g, tol);
        report.prop2_residuals = std::move(p2.residuals);
        report.prop2_holds = p2.holds;
        report.chordal_applicable = g.is_connected() && is_chordal(g).chordal;
        if (report.chordal_applicable)
            report.sufficient_witness = sufficient_condition_chordal(t, lump, g, tol);
    }
    return report;
}

}  // namespace mrf
