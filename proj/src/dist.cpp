#include "mrf/dist.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "mrf/error.hpp"
#include "mrf/indexing.hpp"

namespace mrf {

namespace {

double xlog2x(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

// ---------------------------------------------------------------------------
// AlphabetSpec

AlphabetSpec::AlphabetSpec(std::vector<std::vector<std::string>> symbols)
    : symbols_(std::move(symbols)) {
    if (symbols_.empty()) fail(ErrorCode::EmptySet, "alphabet needs at least one vertex");
    for (std::size_t v = 0; v < symbols_.size(); ++v) {
        const auto& syms = symbols_[v];
        if (syms.empty())
            fail(ErrorCode::Schema,
                 "vertex " + std::to_string(v + 1) + " has an empty alphabet");
        std::set<std::string> seen(syms.begin(), syms.end());
        if (seen.size() != syms.size())
            fail(ErrorCode::Schema,
                 "vertex " + std::to_string(v + 1) + " has duplicate symbols");
    }
    strides_.assign(symbols_.size(), 1);
    total_ = 1;
    for (std::size_t v = symbols_.size(); v-- > 0;) {
        strides_[v] = total_;
        if (total_ > kStateSpaceCap / symbols_[v].size())
            fail(ErrorCode::StateSpaceCap, "product alphabet exceeds 10^7 configurations");
        total_ *= symbols_[v].size();
    }
}

std::size_t AlphabetSpec::cardinality(int vertex) const {
    return symbols(vertex).size();
}

const std::vector<std::string>& AlphabetSpec::symbols(int vertex) const {
    if (vertex < 1 || vertex > vertex_count())
        fail(ErrorCode::VertexRange, "vertex " + std::to_string(vertex) + " out of range");
    return symbols_[static_cast<std::size_t>(vertex - 1)];
}

std::optional<int> AlphabetSpec::symbol_index(int vertex, std::string_view symbol) const {
    const auto& syms = symbols(vertex);
    for (std::size_t k = 0; k < syms.size(); ++k)
        if (syms[k] == symbol) return static_cast<int>(k);
    return std::nullopt;
}

std::size_t AlphabetSpec::index_of(const std::vector<int>& config) const {
    if (config.size() != symbols_.size())
        fail(ErrorCode::Inconsistent, "configuration length does not match vertex count");
    std::size_t idx = 0;
    for (std::size_t v = 0; v < config.size(); ++v) {
        if (config[v] < 0 || static_cast<std::size_t>(config[v]) >= symbols_[v].size())
            fail(ErrorCode::VertexRange, "symbol index out of range");
        idx += strides_[v] * static_cast<std::size_t>(config[v]);
    }
    return idx;
}

std::vector<int> AlphabetSpec::config_at(std::size_t index) const {
    std::vector<int> config(symbols_.size());
    for (std::size_t v = 0; v < symbols_.size(); ++v) {
        config[v] = static_cast<int>(index / strides_[v] % symbols_[v].size());
    }
    return config;
}

std::vector<std::string> AlphabetSpec::labels_at(std::size_t index) const {
    std::vector<int> config = config_at(index);
    std::vector<std::string> labels(config.size());
    for (std::size_t v = 0; v < config.size(); ++v)
        labels[v] = symbols_[v][static_cast<std::size_t>(config[v])];
    return labels;
}

AlphabetSpec AlphabetSpec::restrict_to(const std::vector<int>& vertices) const {
    std::vector<std::vector<std::string>> out;
    out.reserve(vertices.size());
    for (int v : vertices) out.push_back(symbols(v));
    return AlphabetSpec(std::move(out));
}

// ---------------------------------------------------------------------------
// indexing helpers

std::vector<int> checked_vertex_set(std::vector<int> vertices, int vertex_count,
                                    bool allow_empty) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (vertices.empty() && !allow_empty)
        fail(ErrorCode::EmptySet, "vertex set must be nonempty");
    for (int v : vertices)
        if (v < 1 || v > vertex_count)
            fail(ErrorCode::VertexRange, "vertex " + std::to_string(v) + " out of range");
    return vertices;
}

std::vector<std::size_t> projection_strides(const AlphabetSpec& full,
                                            const std::vector<int>& vertices) {
    std::vector<std::size_t> strides(static_cast<std::size_t>(full.vertex_count()), 0);
    std::size_t acc = 1;
    for (std::size_t k = vertices.size(); k-- > 0;) {
        strides[static_cast<std::size_t>(vertices[k] - 1)] = acc;
        acc *= full.cardinality(vertices[k]);
    }
    return strides;
}

void advance_config(std::vector<int>& digits, const AlphabetSpec& a) {
    for (std::size_t v = digits.size(); v-- > 0;) {
        if (static_cast<std::size_t>(++digits[v]) < a.cardinality(static_cast<int>(v + 1)))
            return;
        digits[v] = 0;
    }
}

// ---------------------------------------------------------------------------
// JointTable

JointTable JointTable::exact(AlphabetSpec alphabet, std::vector<Rat> weights) {
    JointTable t(std::move(alphabet), Mode::Exact);
    if (weights.size() != t.alphabet_.total_configurations())
        fail(ErrorCode::Inconsistent, "weight vector does not match the product alphabet");
    Rat sum = 0;
    for (const Rat& w : weights) {
        if (w < 0) fail(ErrorCode::ProbSum, "negative probability");
        sum += w;
    }
    if (sum != 1) fail(ErrorCode::ProbSum, "probabilities sum to " + rat_to_string(sum));
    t.exact_ = std::move(weights);
    return t;
}

JointTable JointTable::dense(AlphabetSpec alphabet, std::vector<double> weights) {
    JointTable t(std::move(alphabet), Mode::Float);
    if (weights.size() != t.alphabet_.total_configurations())
        fail(ErrorCode::Inconsistent, "weight vector does not match the product alphabet");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) fail(ErrorCode::ProbSum, "negative probability");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        fail(ErrorCode::ProbSum, "probabilities sum to " + format_real(sum));
    t.approx_ = std::move(weights);
    return t;
}

std::size_t JointTable::size() const { return alphabet_.total_configurations(); }

const Rat& JointTable::weight_exact(std::size_t index) const { return exact_.at(index); }

double JointTable::weight_float(std::size_t index) const { return approx_.at(index); }

double JointTable::weight_as_double(std::size_t index) const {
    return mode_ == Mode::Exact ? rat_to_double(exact_.at(index)) : approx_.at(index);
}

bool JointTable::is_zero(std::size_t index) const {
    return mode_ == Mode::Exact ? exact_.at(index) == 0
                                : approx_.at(index) <= kSupportEps;
}

bool JointTable::strictly_positive() const {
    for (std::size_t i = 0; i < size(); ++i)
        if (is_zero(i)) return false;
    return true;
}

JointTable JointTable::to_float() const {
    if (mode_ == Mode::Float) return *this;
    std::vector<double> w(size());
    for (std::size_t i = 0; i < size(); ++i) w[i] = weight_as_double(i);
    return JointTable::dense(alphabet_, std::move(w));
}

bool JointTable::same_distribution(const JointTable& other, double tol) const {
    if (!(alphabet_ == other.alphabet_)) return false;
    if (mode_ == Mode::Exact && other.mode_ == Mode::Exact) return exact_ == other.exact_;
    for (std::size_t i = 0; i < size(); ++i)
        if (std::abs(weight_as_double(i) - other.weight_as_double(i)) > tol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// marginalization / conditioning

namespace {

// Marginal weights over a (possibly empty) vertex set, in the table's mode.
struct MarginalWeights {
    std::vector<Rat> exact;
    std::vector<double> approx;
    Mode mode;

    std::size_t size() const {
        return mode == Mode::Exact ? exact.size() : approx.size();
    }
    bool zero(std::size_t i) const {
        return mode == Mode::Exact ? exact[i] == 0 : approx[i] <= kSupportEps;
    }
    double as_double(std::size_t i) const {
        return mode == Mode::Exact ? rat_to_double(exact[i]) : approx[i];
    }
};

MarginalWeights marginal_weights(const JointTable& t, const std::vector<int>& vertices) {
    const AlphabetSpec& a = t.alphabet();
    std::size_t out_size = 1;
    for (int v : vertices) out_size *= a.cardinality(v);
    std::vector<std::size_t> pstride = projection_strides(a, vertices);

    MarginalWeights out;
    out.mode = t.mode();
    if (out.mode == Mode::Exact)
        out.exact.assign(out_size, Rat(0));
    else
        out.approx.assign(out_size, 0.0);

    std::vector<int> digits(static_cast<std::size_t>(a.vertex_count()), 0);
    for (std::size_t idx = 0; idx < t.size(); ++idx, advance_config(digits, a)) {
        std::size_t proj = 0;
        for (std::size_t v = 0; v < digits.size(); ++v)
            proj += pstride[v] * static_cast<std::size_t>(digits[v]);
        if (out.mode == Mode::Exact)
            out.exact[proj] += t.weight_exact(idx);
        else
            out.approx[proj] += t.weight_float(idx);
    }
    return out;
}

// Entropy-only marginal accumulation in doubles; entropies are computed in
// doubles regardless of the table mode, so the exact sums are not needed.
std::vector<double> marginal_double(const JointTable& t, const std::vector<int>& vertices) {
    const AlphabetSpec& a = t.alphabet();
    std::size_t out_size = 1;
    for (int v : vertices) out_size *= a.cardinality(v);
    std::vector<std::size_t> pstride = projection_strides(a, vertices);
    std::vector<double> out(out_size, 0.0);
    std::vector<int> digits(static_cast<std::size_t>(a.vertex_count()), 0);
    for (std::size_t idx = 0; idx < t.size(); ++idx, advance_config(digits, a)) {
        std::size_t proj = 0;
        for (std::size_t v = 0; v < digits.size(); ++v)
            proj += pstride[v] * static_cast<std::size_t>(digits[v]);
        out[proj] += t.weight_as_double(idx);
    }
    return out;
}

}  // namespace

JointTable marginal(const JointTable& t, const std::vector<int>& vertices) {
    std::vector<int> vs = checked_vertex_set(vertices, t.alphabet().vertex_count(), false);
    MarginalWeights w = marginal_weights(t, vs);
    AlphabetSpec sub = t.alphabet().restrict_to(vs);
    if (t.mode() == Mode::Exact) return JointTable::exact(std::move(sub), std::move(w.exact));
    return JointTable::dense(std::move(sub), std::move(w.approx));
}

JointTable conditional(const JointTable& t, const std::vector<int>& target,
                       const std::vector<int>& given,
                       const std::vector<std::string>& given_symbols) {
    const int n = t.alphabet().vertex_count();
    std::vector<int> tg = checked_vertex_set(target, n, false);
    std::vector<int> gv = checked_vertex_set(given, n, true);
    for (int v : tg)
        if (std::binary_search(gv.begin(), gv.end(), v))
            fail(ErrorCode::Inconsistent, "target and conditioning sets overlap");
    if (given_symbols.size() != gv.size())
        fail(ErrorCode::Inconsistent, "conditioning symbols do not match the set");

    std::vector<int> given_digits(gv.size());
    for (std::size_t k = 0; k < gv.size(); ++k) {
        auto di = t.alphabet().symbol_index(gv[k], given_symbols[k]);
        if (!di)
            fail(ErrorCode::Schema, "unknown symbol '" + given_symbols[k] + "' for vertex " +
                                        std::to_string(gv[k]));
        given_digits[k] = *di;
    }

    const AlphabetSpec& a = t.alphabet();
    AlphabetSpec sub = a.restrict_to(tg);
    std::vector<std::size_t> tstride = projection_strides(a, tg);
    std::vector<Rat> exact_slice;
    std::vector<double> approx_slice;
    if (t.mode() == Mode::Exact)
        exact_slice.assign(sub.total_configurations(), Rat(0));
    else
        approx_slice.assign(sub.total_configurations(), 0.0);

    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < t.size(); ++idx, advance_config(digits, a)) {
        bool match = true;
        for (std::size_t k = 0; k < gv.size(); ++k)
            if (digits[static_cast<std::size_t>(gv[k] - 1)] != given_digits[k]) {
                match = false;
                break;
            }
        if (!match) continue;
        std::size_t proj = 0;
        for (std::size_t v = 0; v < digits.size(); ++v)
            proj += tstride[v] * static_cast<std::size_t>(digits[v]);
        if (t.mode() == Mode::Exact)
            exact_slice[proj] += t.weight_exact(idx);
        else
            approx_slice[proj] += t.weight_float(idx);
    }

    if (t.mode() == Mode::Exact) {
        Rat total = 0;
        for (const Rat& w : exact_slice) total += w;
        if (total == 0)
            fail(ErrorCode::ZeroConditioning, "undefined conditional: conditioning event has probability zero");
        for (Rat& w : exact_slice) w /= total;
        return JointTable::exact(std::move(sub), std::move(exact_slice));
    }
    double total = 0.0;
    for (double w : approx_slice) total += w;
    if (total <= kSupportEps)
        fail(ErrorCode::ZeroConditioning, "undefined conditional: conditioning event has probability zero");
    for (double& w : approx_slice) w /= total;
    return JointTable::dense(std::move(sub), std::move(approx_slice));
}

// ---------------------------------------------------------------------------
// entropies

double entropy(const JointTable& t, const std::vector<int>& vertices) {
    std::vector<int> vs = checked_vertex_set(vertices, t.alphabet().vertex_count(), false);
    double h = 0.0;
    for (double w : marginal_double(t, vs)) h += xlog2x(w);
    return h;
}

double entropy(const JointTable& t) {
    std::vector<int> all(static_cast<std::size_t>(t.alphabet().vertex_count()));
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<int>(v + 1);
    return entropy(t, all);
}

double conditional_entropy(const JointTable& t, const std::vector<int>& a,
                           const std::vector<int>& b) {
    const int n = t.alphabet().vertex_count();
    std::vector<int> aa = checked_vertex_set(a, n, false);
    std::vector<int> bb = checked_vertex_set(b, n, true);
    for (int v : aa)
        if (std::binary_search(bb.begin(), bb.end(), v))
            fail(ErrorCode::Inconsistent, "conditional entropy needs disjoint sets");
    if (bb.empty()) return entropy(t, aa);
    std::vector<int> joint = aa;
    joint.insert(joint.end(), bb.begin(), bb.end());
    std::sort(joint.begin(), joint.end());
    return entropy(t, joint) - entropy(t, bb);
}

// ---------------------------------------------------------------------------
// MRF membership

namespace {

std::vector<int> complement_of(int i, int n) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n - 1));
    for (int v = 1; v <= n; ++v)
        if (v != i) out.push_back(v);
    return out;
}

// Definition check for a single vertex. Returns the max deviation between
// p(x_i | x_rest) and p(x_i | x_neighbors) over positive conditioning
// events, plus the first violating configuration.
struct VertexCheck {
    bool holds = true;
    double residual = 0.0;
    std::optional<std::size_t> witness_index;
};

VertexCheck definition_check_vertex(const JointTable& t, const Graph& g, int i, double tol) {
    const AlphabetSpec& a = t.alphabet();
    const int n = a.vertex_count();
    std::vector<int> rest = complement_of(i, n);
    std::vector<int> nb = g.neighbors(i);
    std::vector<int> nbi = nb;
    nbi.push_back(i);
    std::sort(nbi.begin(), nbi.end());

    MarginalWeights m_rest = marginal_weights(t, rest);
    MarginalWeights m_nbi = marginal_weights(t, nbi);
    MarginalWeights m_nb = marginal_weights(t, nb);

    std::vector<std::size_t> s_rest = projection_strides(a, rest);
    std::vector<std::size_t> s_nbi = projection_strides(a, nbi);
    std::vector<std::size_t> s_nb = projection_strides(a, nb);

    const bool exact = t.mode() == Mode::Exact;
    VertexCheck out;
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < t.size(); ++idx, advance_config(digits, a)) {
        std::size_t p_rest = 0, p_nbi = 0, p_nb = 0;
        for (std::size_t v = 0; v < digits.size(); ++v) {
            const auto d = static_cast<std::size_t>(digits[v]);
            p_rest += s_rest[v] * d;
            p_nbi += s_nbi[v] * d;
            p_nb += s_nb[v] * d;
        }
        if (m_rest.zero(p_rest)) continue;
        bool equal;
        if (exact) {
            // w / m_rest == m_nbi / m_nb, cross-multiplied
            equal = t.weight_exact(idx) * m_nb.exact[p_nb] ==
                    m_nbi.exact[p_nbi] * m_rest.exact[p_rest];
        } else {
            equal = true;  // decided by the residual below
        }
        double lhs = t.weight_as_double(idx) / m_rest.as_double(p_rest);
        double rhs = m_nb.zero(p_nb) ? 0.0 : m_nbi.as_double(p_nbi) / m_nb.as_double(p_nb);
        double dev = std::abs(lhs - rhs);
        if (!exact) equal = dev <= tol;
        if (dev > out.residual) out.residual = dev;
        if (!equal && !out.witness_index) {
            out.holds = false;
            out.witness_index = idx;
        }
    }
    return out;
}

}  // namespace

MrfVerdict is_mrf(const JointTable& t, const Graph& g, MrfMethod method, double tol) {
    const int n = t.alphabet().vertex_count();
    if (n != g.vertex_count())
        fail(ErrorCode::Inconsistent, "alphabet and graph vertex counts differ");

    MrfVerdict verdict;
    verdict.holds = true;
    verdict.residuals.assign(static_cast<std::size_t>(n), 0.0);

    if (method == MrfMethod::Definition) {
        for (int i = 1; i <= n; ++i) {
            VertexCheck c = definition_check_vertex(t, g, i, tol);
            verdict.residuals[static_cast<std::size_t>(i - 1)] = c.residual;
            if (!c.holds && verdict.holds) {
                verdict.holds = false;
                verdict.witness = MrfWitness{i, t.alphabet().labels_at(*c.witness_index)};
            }
        }
        return verdict;
    }

    // Entropy form: H(X_i | X_rest) == H(X_i | X_neighbors) for every vertex.
    for (int i = 1; i <= n; ++i) {
        std::vector<int> rest = complement_of(i, n);
        double lhs = rest.empty() ? entropy(t, {i}) : conditional_entropy(t, {i}, rest);
        std::vector<int> nb = g.neighbors(i);
        double rhs = nb.empty() ? entropy(t, {i}) : conditional_entropy(t, {i}, nb);
        double gap = rhs - lhs;  // >= 0: conditioning on more cannot raise entropy
        verdict.residuals[static_cast<std::size_t>(i - 1)] = std::abs(gap);
        if (std::abs(gap) > tol && verdict.holds) {
            verdict.holds = false;
            // surface a concrete violating configuration for the witness
            VertexCheck c = definition_check_vertex(t, g, i, tol);
            if (c.witness_index)
                verdict.witness = MrfWitness{i, t.alphabet().labels_at(*c.witness_index)};
            else
                verdict.witness = MrfWitness{i, {}};
        }
    }
    return verdict;
}

std::vector<std::size_t> support(const JointTable& t) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!t.is_zero(i)) out.push_back(i);
    return out;
}

}  // namespace mrf
