#include "mrf/lump.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "mrf/error.hpp"
#include "mrf/indexing.hpp"
#include "mrf/info.hpp"

namespace mrf {

JointTable pushforward(const JointTable& t, const Lumping& lump) {
    if (!(t.alphabet() == lump.domain()))
        fail(ErrorCode::Inconsistent, "table alphabet does not match the lumping domain");
    const AlphabetSpec& ycod = lump.codomain();
    if (t.mode() == Mode::Exact) {
        std::vector<Rat> w(ycod.total_configurations(), Rat(0));
        for (std::size_t idx = 0; idx < t.size(); ++idx)
            w[lump.apply_index(idx)] += t.weight_exact(idx);
        return JointTable::exact(ycod, std::move(w));
    }
    std::vector<double> w(ycod.total_configurations(), 0.0);
    for (std::size_t idx = 0; idx < t.size(); ++idx)
        w[lump.apply_index(idx)] += t.weight_float(idx);
    return JointTable::dense(ycod, std::move(w));
}

namespace {

bool scalar_close(const Scalar& a, const Scalar& b, bool exact, double tol) {
    if (exact) return a.exact == b.exact;
    double x = a.approx, y = b.approx;
    return std::abs(x - y) <= tol * std::max({std::abs(x), std::abs(y), 1.0});
}

// Iterate every combination drawn from per-slot candidate lists.
template <typename Fn>
void for_each_combination(const std::vector<std::vector<int>>& candidates, Fn&& fn) {
    std::vector<std::size_t> pick(candidates.size(), 0);
    while (true) {
        fn(pick);
        std::size_t k = candidates.size();
        while (k-- > 0) {
            if (++pick[k] < candidates[k].size()) break;
            pick[k] = 0;
            if (k == 0) return;
        }
        if (candidates.empty()) return;
    }
}

}  // namespace

bool constant_on_preimages(const PotentialFamily& f, const Lumping& lump, double tol) {
    const bool exact = f.mode() == Mode::Exact;
    const AlphabetSpec& ycod = lump.codomain();
    for (const auto& [c, table] : f.potentials()) {
        (void)table;
        AlphabetSpec ysub = ycod.restrict_to(c);
        std::vector<int> ylocal(c.size(), 0);
        std::vector<int> full(static_cast<std::size_t>(f.alphabet().vertex_count()), 0);
        for (std::size_t yi = 0; yi < ysub.total_configurations();
             ++yi, advance_config(ylocal, ysub)) {
            std::vector<std::vector<int>> candidates(c.size());
            for (std::size_t k = 0; k < c.size(); ++k)
                candidates[k] = lump.preimage(c[k], ylocal[k]);
            std::optional<Scalar> first;
            bool all_equal = true;
            for_each_combination(candidates, [&](const std::vector<std::size_t>& pick) {
                if (!all_equal) return;
                for (std::size_t k = 0; k < c.size(); ++k)
                    full[static_cast<std::size_t>(c[k] - 1)] = candidates[k][pick[k]];
                Scalar v = f.value(c, full);
                if (!first)
                    first = v;
                else if (!scalar_close(*first, v, exact, tol))
                    all_equal = false;
            });
            if (!all_equal) return false;
        }
    }
    return true;
}

PotentialFamily lumped_potentials(const PotentialFamily& f, const Lumping& lump,
                                  const DependencyAssignment& d, double tol) {
    const int n = f.graph().vertex_count();
    if (static_cast<int>(d.assignment.size()) != n)
        fail(ErrorCode::Inconsistent, "assignment does not cover every vertex");
    const bool exact = f.mode() == Mode::Exact;
    const AlphabetSpec& ycod = lump.codomain();

    std::set<Clique> assigned(d.class_cliques.begin(), d.class_cliques.end());
    std::map<Clique, PotentialTable> out;

    // Assigned cliques: sum psi over the joint preimage of the class
    // coordinates; remaining clique coordinates enter only via y, which the
    // representative sweep verifies.
    for (std::size_t l = 0; l < d.class_cliques.size(); ++l) {
        const Clique& k = d.class_cliques[l];
        const std::vector<int>& members = d.classes[l];
        std::vector<int> others;
        for (int v : k)
            if (!std::binary_search(members.begin(), members.end(), v)) others.push_back(v);

        AlphabetSpec ysub = ycod.restrict_to(k);
        std::vector<Rat> exact_vals(exact ? ysub.total_configurations() : 0);
        std::vector<double> float_vals(exact ? 0 : ysub.total_configurations());

        std::vector<int> ylocal(k.size(), 0);
        std::vector<int> full(static_cast<std::size_t>(n), 0);
        for (std::size_t yi = 0; yi < ysub.total_configurations();
             ++yi, advance_config(ylocal, ysub)) {
            std::vector<std::vector<int>> rep_candidates(others.size());
            for (std::size_t r = 0; r < others.size(); ++r) {
                std::size_t pos = static_cast<std::size_t>(
                    std::find(k.begin(), k.end(), others[r]) - k.begin());
                rep_candidates[r] = lump.preimage(others[r], ylocal[pos]);
            }
            std::vector<std::vector<int>> class_pre(members.size());
            for (std::size_t m = 0; m < members.size(); ++m) {
                std::size_t pos = static_cast<std::size_t>(
                    std::find(k.begin(), k.end(), members[m]) - k.begin());
                class_pre[m] = lump.preimage(members[m], ylocal[pos]);
            }

            std::optional<Scalar> value;
            for_each_combination(rep_candidates, [&](const std::vector<std::size_t>& rep) {
                for (std::size_t r = 0; r < others.size(); ++r)
                    full[static_cast<std::size_t>(others[r] - 1)] = rep_candidates[r][rep[r]];
                Rat acc_exact = 0;
                double acc_float = 0.0;
                for_each_combination(class_pre, [&](const std::vector<std::size_t>& pick) {
                    for (std::size_t m = 0; m < members.size(); ++m)
                        full[static_cast<std::size_t>(members[m] - 1)] = class_pre[m][pick[m]];
                    Scalar v = f.value(k, full);
                    if (exact)
                        acc_exact += v.exact;
                    else
                        acc_float += v.approx;
                });
                Scalar sum = exact ? Scalar::of(std::move(acc_exact)) : Scalar::of(acc_float);
                if (!value) {
                    value = sum;
                } else if (!scalar_close(*value, sum, exact, tol)) {
                    fail(ErrorCode::Inconsistent,
                         "lumped potential is ill-defined: the preimage sum depends on the "
                         "representative, so the assignment precondition is violated");
                }
            });
            if (exact)
                exact_vals[yi] = value->exact;
            else
                float_vals[yi] = value->approx;
        }
        out.emplace(k, exact ? PotentialTable::exact(std::move(exact_vals))
                             : PotentialTable::dense(std::move(float_vals)));
    }

    // Untouched cliques: psi depends on x only via y; relabel it.
    for (const auto& [c, table] : f.potentials()) {
        (void)table;
        if (assigned.count(c)) continue;
        AlphabetSpec ysub = ycod.restrict_to(c);
        std::vector<Rat> exact_vals(exact ? ysub.total_configurations() : 0);
        std::vector<double> float_vals(exact ? 0 : ysub.total_configurations());
        std::vector<int> ylocal(c.size(), 0);
        std::vector<int> full(static_cast<std::size_t>(n), 0);
        for (std::size_t yi = 0; yi < ysub.total_configurations();
             ++yi, advance_config(ylocal, ysub)) {
            std::vector<std::vector<int>> candidates(c.size());
            for (std::size_t k = 0; k < c.size(); ++k)
                candidates[k] = lump.preimage(c[k], ylocal[k]);
            std::optional<Scalar> value;
            for_each_combination(candidates, [&](const std::vector<std::size_t>& pick) {
                for (std::size_t k = 0; k < c.size(); ++k)
                    full[static_cast<std::size_t>(c[k] - 1)] = candidates[k][pick[k]];
                Scalar v = f.value(c, full);
                if (!value) {
                    value = v;
                } else if (!scalar_close(*value, v, exact, tol)) {
                    fail(ErrorCode::Inconsistent,
                         "lumped potential is ill-defined on unassigned clique: psi is not "
                         "constant on the preimage");
                }
            });
            if (exact)
                exact_vals[yi] = value->exact;
            else
                float_vals[yi] = value->approx;
        }
        out.emplace(c, exact ? PotentialTable::exact(std::move(exact_vals))
                             : PotentialTable::dense(std::move(float_vals)));
    }

    return PotentialFamily(f.graph(), ycod, std::move(out));
}

const char* certificate_name(Certificate c) {
    switch (c) {
        case Certificate::None: return "none";
        case Certificate::AllEqual: return "allequal";
        case Certificate::Prop1: return "prop1";
        case Certificate::Prop2: return "prop2";
    }
    return "none";
}

LumpabilityReport check_lumpable(const JointTable& t, const Lumping& lump, const Graph& g,
                                 const std::optional<PotentialFamily>& f,
                                 const LumpOptions& opts) {
    LumpabilityReport report;
    JointTable p_y = pushforward(t, lump);
    report.brute = is_mrf(p_y, g, MrfMethod::Definition, opts.tol);
    report.input_mrf = is_mrf(t, g, MrfMethod::Definition, opts.tol);
    report.is_lumpable = report.brute.holds;

    std::optional<PotentialFamily> family = f;
    bool canonical = false;
    if (family && !synthesize_pmf(*family).same_distribution(t, opts.tol))
        fail(ErrorCode::Inconsistent, "supplied potential family does not represent the table");
    if (!family && report.input_mrf.holds && t.strictly_positive()) {
        family = fit_canonical_potentials(t, g, opts.tol);
        canonical = true;
    }

    if (report.input_mrf.holds && family) {
        bool allequal = constant_on_preimages(*family, lump, opts.tol);
        AssignOutcome assign = assign_cliques(*family, lump, opts.tol);
        if (allequal && !assign.ok())
            fail(ErrorCode::InvariantViolation,
                 "preimage-constant family must satisfy the clique assignment");
        if (assign.ok()) {
            report.certificate = allequal ? Certificate::AllEqual : Certificate::Prop1;
            report.lumped = lumped_potentials(*family, lump, *assign.assignment, opts.tol);
        } else {
            report.note = canonical ? "canonical family failed"
                                    : "supplied family has a vertex with two strictly "
                                      "dependent clique potentials";
        }
    } else if (!report.input_mrf.holds) {
        report.note = "input table is not an MRF on the graph";
    } else {
        report.note = "no strictly positive potential family available";
    }

    if (report.certificate == Certificate::None && report.input_mrf.holds) {
        Prop2Result p2 = prop2_condition(t, lump, g, opts.tol);
        if (p2.holds) report.certificate = Certificate::Prop2;
    }
    if (report.certificate != Certificate::None) report.note.clear();

    if (report.certificate != Certificate::None && !report.brute.holds)
        fail(ErrorCode::InvariantViolation,
             std::string("certificate ") + certificate_name(report.certificate) +
                 " fired on a non-lumpable instance");

    if (opts.want_minimal_graphs) report.minimal_graphs = minimal_graphs(p_y, opts.tol);
    return report;
}

// ---------------------------------------------------------------------------
// minimal graphs

namespace {

// X_i and X_j conditionally independent given all other coordinates?
bool pairwise_ci(const JointTable& t, int i, int j, double tol) {
    const AlphabetSpec& a = t.alphabet();
    const int n = a.vertex_count();
    std::vector<int> rest, no_j, no_i;
    for (int v = 1; v <= n; ++v) {
        if (v != i && v != j) rest.push_back(v);
        if (v != j) no_j.push_back(v);
        if (v != i) no_i.push_back(v);
    }
    JointTable m_rest = rest.empty() ? t : marginal(t, rest);
    JointTable m_no_j = marginal(t, no_j);
    JointTable m_no_i = marginal(t, no_i);
    std::vector<std::size_t> s_rest = projection_strides(a, rest);
    std::vector<std::size_t> s_no_j = projection_strides(a, no_j);
    std::vector<std::size_t> s_no_i = projection_strides(a, no_i);
    const bool exact = t.mode() == Mode::Exact;

    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < t.size(); ++idx, advance_config(digits, a)) {
        std::size_t p_rest = 0, p_no_j = 0, p_no_i = 0;
        for (std::size_t v = 0; v < digits.size(); ++v) {
            const auto dg = static_cast<std::size_t>(digits[v]);
            p_rest += s_rest[v] * dg;
            p_no_j += s_no_j[v] * dg;
            p_no_i += s_no_i[v] * dg;
        }
        if (rest.empty()) {
            // unconditional independence of X_i and X_j
            if (exact) {
                if (t.weight_exact(idx) != m_no_j.weight_exact(p_no_j) *
                                               m_no_i.weight_exact(p_no_i))
                    return false;
            } else if (std::abs(t.weight_float(idx) -
                                m_no_j.weight_float(p_no_j) * m_no_i.weight_float(p_no_i)) >
                       tol) {
                return false;
            }
            continue;
        }
        if (m_rest.is_zero(p_rest)) continue;
        if (exact) {
            if (t.weight_exact(idx) * m_rest.weight_exact(p_rest) !=
                m_no_j.weight_exact(p_no_j) * m_no_i.weight_exact(p_no_i))
                return false;
        } else {
            double r = m_rest.weight_float(p_rest);
            double lhs = t.weight_float(idx) / r;
            double rhs = (m_no_j.weight_float(p_no_j) / r) * (m_no_i.weight_float(p_no_i) / r);
            if (std::abs(lhs - rhs) > tol) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<Graph> minimal_graphs(const JointTable& t, double tol) {
    const int n = t.alphabet().vertex_count();
    if (n > 8) fail(ErrorCode::SizeCap, "minimal-graph search is limited to 8 vertices");

    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);

    if (t.strictly_positive()) {
        // Unique minimal graph: keep exactly the pairs that are dependent
        // given everything else.
        std::vector<std::pair<int, int>> edges;
        for (auto [i, j] : pairs)
            if (!pairwise_ci(t, i, j, tol)) edges.emplace_back(i, j);
        Graph result(n, edges);
        if (!is_mrf(t, result, MrfMethod::Definition, tol).holds)
            fail(ErrorCode::InvariantViolation,
                 "pairwise construction failed to produce an MRF graph for a positive table");
        return {result};
    }

    const std::size_t e = pairs.size();
    if (e > 16)
        fail(ErrorCode::SizeCap,
             "minimal-graph enumeration over non-positive tables is limited to 16 candidate edges");

    std::vector<std::uint32_t> masks(1u << e);
    for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
    std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        return std::popcount(a) < std::popcount(b);
    });

    std::vector<std::uint32_t> minimal_masks;
    std::vector<Graph> out;
    for (std::uint32_t mask : masks) {
        bool dominated = false;
        for (std::uint32_t mm : minimal_masks)
            if ((mask & mm) == mm) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        std::vector<std::pair<int, int>> edges;
        for (std::size_t k = 0; k < e; ++k)
            if (mask & (1u << k)) edges.push_back(pairs[k]);
        Graph g(n, edges);
        if (is_mrf(t, g, MrfMethod::Definition, tol).holds) {
            minimal_masks.push_back(mask);
            out.push_back(std::move(g));
        }
    }
    std::sort(out.begin(), out.end(), [](const Graph& a, const Graph& b) {
        if (a.edges().size() != b.edges().size()) return a.edges().size() < b.edges().size();
        return a.edges() < b.edges();
    });
    return out;
}

}  // namespace mrf
