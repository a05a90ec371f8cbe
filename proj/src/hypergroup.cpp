#include "hgk/hypergroup.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace hgk {

namespace {

// Comparison shims so the axiom checks read the same for exact and real tensors.
template <class S>
struct scalar_ops;

template <>
struct scalar_ops<Rat> {
    static bool is_zero(const Rat& v, double) { return sgn(v) == 0; }
    static bool is_negative(const Rat& v, double) { return sgn(v) < 0; }
    static bool is_positive_mass(const Rat& v, double) { return sgn(v) > 0; }
    static bool eq(const Rat& a, const Rat& b, double) { return a == b; }
    static double dev(const Rat& a, const Rat& b) { return std::abs(to_double(a - b)); }
    static Rat one() { return Rat(1); }
};

template <>
struct scalar_ops<double> {
    static bool is_zero(double v, double tol) { return std::abs(v) <= tol; }
    static bool is_negative(double v, double tol) { return v < -tol; }
    // "positive" in the support sense: genuinely carries mass.
    static bool is_positive_mass(double v, double eps) { return v > eps; }
    static bool eq(double a, double b, double tol) { return std::abs(a - b) <= tol; }
    static double dev(double a, double b) { return std::abs(a - b); }
    static double one() { return 1.0; }
};

template <class S>
double pick_tol(const Config& cfg, double tol) {
    if constexpr (std::is_same_v<S, Rat>)
        return 0.0;
    else
        return tol >= 0 ? tol : cfg.tau_axiom;
}

std::string idx_text(const std::vector<std::string>& names, const std::vector<int>& idx) {
    std::string out = "(";
    for (std::size_t t = 0; t < idx.size(); ++t) {
        if (t) out += ",";
        out += names[idx[t]];
    }
    out += ")";
    return out;
}

} // namespace

std::string ValidationReport::to_text(const std::vector<std::string>& names) const {
    std::ostringstream out;
    out << "valid: " << (ok ? "yes" : "no") << "\n";
    out << "violations: " << violations.size() << "\n";
    std::size_t shown = 0;
    for (const auto& v : violations) {
        if (shown++ == 50) {
            out << "  ... (" << violations.size() - 50 << " more)\n";
            break;
        }
        out << "  " << v.axiom << " at " << idx_text(names, v.indices);
        if (v.magnitude > 0) out << " magnitude " << v.magnitude;
        out << "\n";
    }
    return out.str();
}

template <class S>
ValidationReport HypergroupT<S>::validate(const RawHypergroupT<S>& raw, const Config& cfg, double tol) {
    const int n = raw.size();
    if (n == 0) fail(errc::malformed_input, "empty element list");
    if (raw.tensor.size() != static_cast<std::size_t>(n) * n * n)
        fail(errc::malformed_input, "tensor has " + std::to_string(raw.tensor.size()) +
                                        " entries, expected " + std::to_string(n * n * n));
    if (raw.identity < 0 || raw.identity >= n) fail(errc::malformed_input, "identity index out of range");
    if (raw.involution.size() != static_cast<std::size_t>(n))
        fail(errc::malformed_input, "involution has wrong length");
    {
        std::vector<char> seen(n, 0);
        for (int i = 0; i < n; ++i) {
            int v = raw.involution[i];
            if (v < 0 || v >= n || seen[v]) fail(errc::malformed_input, "involution is not a permutation");
            seen[v] = 1;
        }
        for (int i = 0; i < n; ++i)
            if (raw.involution[raw.involution[i]] != i)
                fail(errc::malformed_input, "involution is not self-inverse");
    }
    {
        std::set<std::string> uniq(raw.names.begin(), raw.names.end());
        if (uniq.size() != raw.names.size()) fail(errc::malformed_input, "duplicate element names");
    }

    using ops = scalar_ops<S>;
    const double t = pick_tol<S>(cfg, tol);
    const double mass_eps = std::is_same_v<S, Rat> ? 0.0 : cfg.support_eps;
    ValidationReport report;
    auto flag = [&](const char* axiom, std::initializer_list<int> idx, double mag) {
        report.ok = false;
        report.violations.push_back({axiom, std::vector<int>(idx), mag});
    };

    const int e = raw.identity;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            S sum{};
            for (int k = 0; k < n; ++k) {
                const S& v = raw.at(i, j, k);
                if (ops::is_negative(v, t)) flag("nonnegative", {i, j, k}, ops::dev(v, S{}));
                sum += v;
            }
            if (!ops::eq(sum, ops::one(), t * n)) flag("row-sum", {i, j}, ops::dev(sum, ops::one()));
        }
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            S want = (j == k) ? ops::one() : S{};
            if (!ops::eq(raw.at(e, j, k), want, t)) flag("unit", {e, j, k}, ops::dev(raw.at(e, j, k), want));
            if (!ops::eq(raw.at(j, e, k), want, t)) flag("unit", {j, e, k}, ops::dev(raw.at(j, e, k), want));
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!ops::eq(raw.at(i, j, k), raw.at(j, i, k), t))
                    flag("commutative", {i, j, k}, ops::dev(raw.at(i, j, k), raw.at(j, i, k)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const S& lhs = raw.at(raw.involution[i], raw.involution[j], k);
                const S& rhs = raw.at(j, i, raw.involution[k]);
                if (!ops::eq(lhs, rhs, t)) flag("hermitian", {i, j, k}, ops::dev(lhs, rhs));
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool carries = ops::is_positive_mass(raw.at(i, j, e), mass_eps);
            bool should = raw.involution[i] == j;
            if (carries != should) flag("support", {i, j, e}, to_double(raw.at(i, j, e)));
        }

    // Associativity: compare (d_i * d_j) * d_k with d_i * (d_j * d_k),
    // iterating only over carried masses.
    std::vector<std::vector<int>> supp(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto& s = supp[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < n; ++k)
                if (!ops::is_zero(raw.at(i, j, k), t)) s.push_back(k);
        }
    std::vector<S> lhs(n), rhs(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::fill(lhs.begin(), lhs.end(), S{});
                std::fill(rhs.begin(), rhs.end(), S{});
                for (int m : supp[static_cast<std::size_t>(i) * n + j]) {
                    const S& w = raw.at(i, j, m);
                    for (int u : supp[static_cast<std::size_t>(m) * n + k]) lhs[u] += w * raw.at(m, k, u);
                }
                for (int m : supp[static_cast<std::size_t>(j) * n + k]) {
                    const S& w = raw.at(j, k, m);
                    for (int u : supp[static_cast<std::size_t>(i) * n + m]) rhs[u] += w * raw.at(i, m, u);
                }
                for (int u = 0; u < n; ++u)
                    if (!ops::eq(lhs[u], rhs[u], t * n))
                        flag("associative", {i, j, k, u}, ops::dev(lhs[u], rhs[u]));
            }

    return report;
}

template <class S>
HypergroupT<S>::HypergroupT(RawHypergroupT<S> raw, double support_tol)
    : raw_(std::move(raw)),
      names_(raw_.names),
      identity_(raw_.identity),
      involution_(raw_.involution),
      tensor_(raw_.tensor) {
    const int n = size();
    support_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto& s = support_[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < n; ++k) {
                const S& v = c(i, j, k);
                bool carried;
                if constexpr (std::is_same_v<S, Rat>)
                    carried = sgn(v) != 0;
                else
                    carried = std::abs(v) > support_tol;
                if (carried) s.push_back(k);
            }
        }
}

template <class S>
HypergroupT<S> HypergroupT<S>::create(RawHypergroupT<S> raw, const Config& cfg, double tol) {
    ValidationReport report = validate(raw, cfg, tol);
    if (!report.ok) fail(errc::axiom_failure, "hypergroup axioms violated\n" + report.to_text(raw.names));
    return HypergroupT(std::move(raw), cfg.support_eps);
}

template <class S>
MeasureT<S> HypergroupT<S>::dirac(int i) const {
    return MeasureT<S>::dirac(*this, i);
}

template <class S>
MeasureT<S>::MeasureT(const HypergroupT<S>& host, std::vector<S> weights)
    : host_(&host), weights_(std::move(weights)) {
    if (weights_.size() != static_cast<std::size_t>(host.size()))
        fail(errc::host_mismatch, "weight vector does not match host size");
}

template <class S>
MeasureT<S> MeasureT<S>::dirac(const HypergroupT<S>& host, int i) {
    std::vector<S> w(host.size(), S{});
    w[i] = scalar_ops<S>::one();
    return MeasureT(host, std::move(w));
}

template <class S>
S MeasureT<S>::total() const {
    S sum{};
    for (const S& v : weights_) sum += v;
    return sum;
}

template <class S>
MeasureT<S> convolve(const MeasureT<S>& mu, const MeasureT<S>& nu) {
    if (&mu.host() != &nu.host()) fail(errc::host_mismatch, "measures on different hosts");
    const auto& H = mu.host();
    const int n = H.size();
    std::vector<S> out(n, S{});
    for (int i = 0; i < n; ++i) {
        if (scalar_ops<S>::is_zero(mu[i], 1e-15)) continue;
        for (int j = 0; j < n; ++j) {
            if (scalar_ops<S>::is_zero(nu[j], 1e-15)) continue;
            S w = mu[i] * nu[j];
            for (int k : H.support(i, j)) out[k] += w * H.c(i, j, k);
        }
    }
    return MeasureT<S>(H, std::move(out));
}

namespace {

// Exact nullspace of the stacked invariance system for rational tensors.
std::vector<Rat> invariant_ray_exact(const HypergroupT<Rat>& H) {
    const int n = H.size();
    // rows: for each x, k: sum_j (c(x,j,k) - [j==k]) w_j = 0
    std::vector<std::vector<Rat>> rows;
    rows.reserve(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int k = 0; k < n; ++k) {
            std::vector<Rat> row(n, Rat(0));
            bool nonzero = false;
            for (int j = 0; j < n; ++j) {
                row[j] = H.c(x, j, k) - (j == k ? Rat(1) : Rat(0));
                nonzero = nonzero || sgn(row[j]) != 0;
            }
            if (nonzero) rows.push_back(std::move(row));
        }
    // Gaussian elimination to row echelon form.
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int col = 0; col < n && r < rows.size(); ++col) {
        std::size_t p = r;
        while (p < rows.size() && sgn(rows[p][col]) == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        Rat inv = 1 / rows[r][col];
        for (int j = col; j < n; ++j) rows[r][j] *= inv;
        for (std::size_t q = 0; q < rows.size(); ++q) {
            if (q == r || sgn(rows[q][col]) == 0) continue;
            Rat f = rows[q][col];
            for (int j = col; j < n; ++j) rows[q][j] -= f * rows[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }
    const int rank = static_cast<int>(pivot_col.size());
    if (n - rank != 1)
        fail(errc::no_invariant_measure,
             "invariance system has nullity " + std::to_string(n - rank) + ", expected 1");
    std::vector<char> is_pivot(n, 0);
    for (int col : pivot_col) is_pivot[col] = 1;
    int free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    std::vector<Rat> w(n, Rat(0));
    w[free_col] = 1;
    for (int t = rank - 1; t >= 0; --t) w[pivot_col[t]] = -rows[t][free_col];
    return w;
}

std::vector<double> invariant_ray_real(const HypergroupT<double>& H, const Config& cfg) {
    const int n = H.size();
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd A(n, n);
    for (int x = 0; x < n; ++x) {
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) A(k, j) = H.c(x, j, k) - (j == k ? 1.0 : 0.0);
        G += A.transpose() * A;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    if (es.info() != Eigen::Success) fail(errc::no_invariant_measure, "invariance solve failed");
    const auto& ev = es.eigenvalues();
    if (ev(0) > 1e-8) fail(errc::no_invariant_measure, "no invariant ray (residual too large)");
    if (n > 1 && ev(1) < 1e-8) fail(errc::no_invariant_measure, "invariant ray is not unique");
    Eigen::VectorXd v = es.eigenvectors().col(0);
    if (v.sum() < 0) v = -v;
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = v(i) < 0 && v(i) > -cfg.tau_char ? 0.0 : v(i);
    return w;
}

} // namespace

template <class S>
MeasureT<S> haar_measure(const HypergroupT<S>& H, const Config& cfg) {
    std::vector<S> ray;
    if constexpr (std::is_same_v<S, Rat>)
        ray = invariant_ray_exact(H);
    else
        ray = invariant_ray_real(H, cfg);
    S total{};
    for (const S& v : ray) {
        if (scalar_ops<S>::is_negative(v, cfg.tau_char)) fail(errc::no_invariant_measure, "invariant ray not positive");
        total += v;
    }
    if (scalar_ops<S>::is_zero(total, cfg.tau_char)) fail(errc::no_invariant_measure, "invariant ray vanishes");
    for (S& v : ray) v /= total;
    return MeasureT<S>(H, std::move(ray));
}

bool Subhypergroup::contains(int i) const {
    return std::binary_search(members.begin(), members.end(), i);
}

template <class S>
bool is_subhypergroup(const HypergroupT<S>& H, const std::vector<int>& members) {
    std::vector<char> in(H.size(), 0);
    for (int m : members) {
        if (m < 0 || m >= H.size()) return false;
        in[m] = 1;
    }
    if (!in[H.identity()]) return false;
    for (int m : members)
        if (!in[H.inv(m)]) return false;
    for (int a : members)
        for (int b : members)
            for (int k : H.support(a, b))
                if (!in[k]) return false;
    return true;
}

template <class S>
Subhypergroup generated_subhypergroup(const HypergroupT<S>& H, const std::vector<int>& seed) {
    std::vector<char> in(H.size(), 0);
    in[H.identity()] = 1;
    for (int s : seed) {
        if (s < 0 || s >= H.size()) fail(errc::malformed_input, "seed index out of range");
        in[s] = 1;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < H.size(); ++a) {
            if (!in[a]) continue;
            if (!in[H.inv(a)]) {
                in[H.inv(a)] = 1;
                changed = true;
            }
            for (int b = 0; b <= a; ++b) {
                if (!in[b]) continue;
                for (int k : H.support(a, b))
                    if (!in[k]) {
                        in[k] = 1;
                        changed = true;
                    }
            }
        }
    }
    Subhypergroup out;
    for (int i = 0; i < H.size(); ++i)
        if (in[i]) out.members.push_back(i);
    return out;
}

template <class S>
std::vector<Subhypergroup> enumerate_subhypergroups(const HypergroupT<S>& H, const Config& cfg) {
    if (H.size() > cfg.enumeration_size_bound)
        fail(errc::size_bound, "hypergroup of order " + std::to_string(H.size()) +
                                   " exceeds enumeration bound " +
                                   std::to_string(cfg.enumeration_size_bound));
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> frontier;
    auto root = generated_subhypergroup(H, {}).members;
    found.insert(root);
    frontier.push_back(root);
    while (!frontier.empty()) {
        auto current = std::move(frontier.back());
        frontier.pop_back();
        for (int x = 0; x < H.size(); ++x) {
            if (std::binary_search(current.begin(), current.end(), x)) continue;
            auto seed = current;
            seed.push_back(x);
            auto grown = generated_subhypergroup(H, seed).members;
            if (found.insert(grown).second) frontier.push_back(grown);
        }
    }
    std::vector<Subhypergroup> out;
    out.reserve(found.size());
    for (const auto& m : found) out.push_back({m});
    std::sort(out.begin(), out.end(), [](const Subhypergroup& a, const Subhypergroup& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.members < b.members;
    });
    return out;
}

template <class S>
HypergroupT<S> restrict_to_subhypergroup(const HypergroupT<S>& H, const Subhypergroup& sub,
                                         const Config& cfg) {
    if (!is_subhypergroup(H, sub.members))
        fail(errc::not_subhypergroup, "subset is not a subhypergroup");
    const int m = sub.size();
    RawHypergroupT<S> raw;
    raw.names.reserve(m);
    std::vector<int> pos(H.size(), -1);
    for (int t = 0; t < m; ++t) {
        raw.names.push_back(H.name(sub.members[t]));
        pos[sub.members[t]] = t;
    }
    raw.identity = pos[H.identity()];
    raw.involution.resize(m);
    for (int t = 0; t < m; ++t) raw.involution[t] = pos[H.inv(sub.members[t])];
    raw.tensor.assign(static_cast<std::size_t>(m) * m * m, S{});
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int k : H.support(sub.members[a], sub.members[b]))
                raw.at(a, b, pos[k]) = H.c(sub.members[a], sub.members[b], k);
    return HypergroupT<S>::create(std::move(raw), cfg);
}

template <class S>
MeasureT<S> idempotent_of_subhypergroup(const HypergroupT<S>& H, const Subhypergroup& sub,
                                        const Config& cfg) {
    HypergroupT<S> inner = restrict_to_subhypergroup(H, sub, cfg);
    MeasureT<S> w = haar_measure(inner, cfg);
    std::vector<S> lifted(H.size(), S{});
    for (int t = 0; t < sub.size(); ++t) lifted[sub.members[t]] = w[t];
    return MeasureT<S>(H, std::move(lifted));
}

template <class S>
QuotientT<S> quotient(const HypergroupT<S>& H, const Subhypergroup& sub, const Config& cfg) {
    const int n = H.size();
    MeasureT<S> e = idempotent_of_subhypergroup(H, sub, cfg);
    auto weights_equal = [&](const std::vector<S>& a, const std::vector<S>& b) {
        for (int i = 0; i < n; ++i)
            if (!scalar_ops<S>::eq(a[i], b[i], cfg.support_eps)) return false;
        return true;
    };

    std::vector<std::vector<S>> coset(n);
    for (int h = 0; h < n; ++h) coset[h] = convolve(H.dirac(h), e).weights();

    std::vector<int> class_of(n, -1);
    std::vector<std::vector<int>> class_members;
    std::vector<std::vector<S>> class_weights;
    for (int h = 0; h < n; ++h) {
        if (class_of[h] >= 0) continue;
        int cls = static_cast<int>(class_members.size());
        class_members.push_back({});
        class_weights.push_back(coset[h]);
        for (int g = h; g < n; ++g) {
            if (class_of[g] < 0 && weights_equal(coset[g], coset[h])) {
                class_of[g] = cls;
                class_members[cls].push_back(g);
            }
        }
    }
    const int m = static_cast<int>(class_members.size());

    RawHypergroupT<S> raw;
    raw.names.reserve(m);
    for (int cls = 0; cls < m; ++cls) raw.names.push_back("[" + H.name(class_members[cls][0]) + "]");
    raw.identity = class_of[H.identity()];
    raw.involution.resize(m);
    for (int cls = 0; cls < m; ++cls) raw.involution[cls] = class_of[H.inv(class_members[cls][0])];
    raw.tensor.assign(static_cast<std::size_t>(m) * m * m, S{});

    for (int a = 0; a < m; ++a) {
        int ra = class_members[a][0];
        for (int b = 0; b < m; ++b) {
            int rb = class_members[b][0];
            // mu_a * mu_b = d_ra * d_rb * e  (idempotent absorbed)
            std::vector<S> prod = convolve(convolve(H.dirac(ra), H.dirac(rb)), e).weights();
            for (int cls = 0; cls < m; ++cls) {
                S mass{};
                for (int x : class_members[cls]) mass += prod[x];
                raw.at(a, b, cls) = mass;
                for (int x : class_members[cls]) {
                    S expect = mass * class_weights[cls][x];
                    if (!scalar_ops<S>::eq(prod[x], expect, cfg.support_eps))
                        fail(errc::decomposition_failure,
                             "product of classes " + raw.names[a] + "*" + raw.names[b] +
                                 " is not constant on class " + raw.names[cls]);
                }
            }
        }
    }
    return QuotientT<S>{HypergroupT<S>::create(std::move(raw), cfg), std::move(class_of),
                        std::move(class_members), std::move(class_weights)};
}

RealHypergroup to_real(const Hypergroup& H, const Config& cfg) {
    RawRealHypergroup raw;
    raw.names = H.names();
    raw.identity = H.identity();
    raw.involution = H.involution();
    raw.tensor.resize(H.raw().tensor.size());
    for (std::size_t t = 0; t < raw.tensor.size(); ++t) raw.tensor[t] = to_double(H.raw().tensor[t]);
    return RealHypergroup::create(std::move(raw), cfg);
}

template class HypergroupT<Rat>;
template class HypergroupT<double>;
template class MeasureT<Rat>;
template class MeasureT<double>;
template MeasureT<Rat> convolve(const MeasureT<Rat>&, const MeasureT<Rat>&);
template MeasureT<double> convolve(const MeasureT<double>&, const MeasureT<double>&);
template MeasureT<Rat> haar_measure(const HypergroupT<Rat>&, const Config&);
template MeasureT<double> haar_measure(const HypergroupT<double>&, const Config&);
template bool is_subhypergroup(const HypergroupT<Rat>&, const std::vector<int>&);
template bool is_subhypergroup(const HypergroupT<double>&, const std::vector<int>&);
template Subhypergroup generated_subhypergroup(const HypergroupT<Rat>&, const std::vector<int>&);
template Subhypergroup generated_subhypergroup(const HypergroupT<double>&, const std::vector<int>&);
template std::vector<Subhypergroup> enumerate_subhypergroups(const HypergroupT<Rat>&, const Config&);
template std::vector<Subhypergroup> enumerate_subhypergroups(const HypergroupT<double>&, const Config&);
template HypergroupT<Rat> restrict_to_subhypergroup(const HypergroupT<Rat>&, const Subhypergroup&, const Config&);
template HypergroupT<double> restrict_to_subhypergroup(const HypergroupT<double>&, const Subhypergroup&, const Config&);
template MeasureT<Rat> idempotent_of_subhypergroup(const HypergroupT<Rat>&, const Subhypergroup&, const Config&);
template MeasureT<double> idempotent_of_subhypergroup(const HypergroupT<double>&, const Subhypergroup&, const Config&);
template QuotientT<Rat> quotient(const HypergroupT<Rat>&, const Subhypergroup&, const Config&);
template QuotientT<double> quotient(const HypergroupT<double>&, const Subhypergroup&, const Config&);

} // namespace hgk
