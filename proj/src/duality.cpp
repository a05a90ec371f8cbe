#include "hgk/duality.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace hgk {

namespace {

double row_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

// Portable uniform double in [1, 2) from a 64-bit generator state.
double uniform12(std::uint64_t bits) { return 1.0 + static_cast<double>(bits >> 11) * 0x1.0p-53; }

struct VerifyOutcome {
    bool ok = false;
    std::string why;
};

template <class S>
VerifyOutcome verify_rows(const HypergroupT<S>& H, const std::vector<std::vector<Complex>>& rows,
                          const std::vector<double>& haar, const Config& cfg) {
    const int n = H.size();
    const double tol = cfg.tau_char;
    for (int r = 0; r < n; ++r) {
        const auto& v = rows[r];
        if (std::abs(v[H.identity()] - 1.0) > tol) return {false, "identity value"};
        for (int i = 0; i < n; ++i) {
            if (std::abs(v[i]) > 1.0 + tol) return {false, "boundedness"};
            if (std::abs(std::conj(v[i]) - v[H.inv(i)]) > tol) return {false, "hermitian"};
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Complex sum = 0.0;
                for (int k : H.support(i, j)) sum += to_double(H.c(i, j, k)) * v[k];
                if (std::abs(sum - v[i] * v[j]) > tol) return {false, "multiplicativity"};
            }
    }
    for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s) {
            if (row_distance(rows[r], rows[s]) < 10 * tol) return {false, "rows not distinct"};
            Complex ip = 0.0;
            for (int x = 0; x < n; ++x) ip += haar[x] * rows[r][x] * std::conj(rows[s][x]);
            if (std::abs(ip) > tol) return {false, "orthogonality"};
        }
    return {true, ""};
}

} // namespace

struct TableBuilder {
    static void fill(CharacterTable& t, const std::vector<int>& order,
                     std::vector<std::vector<Complex>>& rows, const std::vector<double>& haar,
                     int identity, std::vector<int> involution, std::vector<std::string> names,
                     const Config& cfg) {
        const int n = static_cast<int>(rows.size());
        t.haar_ = haar;
        t.host_identity_ = identity;
        t.host_involution_ = std::move(involution);
        t.host_names_ = std::move(names);
        t.rows_.resize(n);
        for (int r = 0; r < n; ++r) t.rows_[r].values = std::move(rows[order[r]]);
        t.dual_weights_.resize(n);
        for (int r = 0; r < n; ++r) {
            double norm = 0.0;
            for (int x = 0; x < static_cast<int>(t.rows_[r].values.size()); ++x)
                norm += haar[x] * std::norm(t.rows_[r].values[x]);
            t.dual_weights_[r] = 1.0 / norm;
        }
        t.conj_row_.assign(n, -1);
        for (int r = 0; r < n; ++r) {
            std::vector<Complex> conj_vals(t.rows_[r].values.size());
            for (std::size_t x = 0; x < conj_vals.size(); ++x) conj_vals[x] = std::conj(t.rows_[r].values[x]);
            for (int s = 0; s < n; ++s)
                if (row_distance(conj_vals, t.rows_[s].values) <= cfg.tau_char) {
                    t.conj_row_[r] = s;
                    break;
                }
            if (t.conj_row_[r] < 0)
                fail(errc::degenerate_spectrum, "conjugate character missing from basis");
        }
    }
};

std::string CharacterTable::to_text() const {
    std::ostringstream out;
    const int n = columns();
    out << "character-table\n";
    out << "elements:";
    for (const auto& nm : host_names_) out << " " << nm;
    out << "\n";
    out << "haar:";
    for (double w : haar_) out << " " << fmt_real(w);
    out << "\n";
    for (int r = 0; r < rows(); ++r) {
        out << "row " << r << ":";
        for (int x = 0; x < n; ++x)
            out << " (" << fmt_real(rows_[r].values[x].real()) << ", "
                << fmt_real(rows_[r].values[x].imag()) << ")";
        out << " | dual_weight: " << fmt_real(dual_weights_[r]) << "\n";
    }
    return out.str();
}

template <class S>
CharacterTable character_table(const HypergroupT<S>& H, const Config& cfg) {
    const int n = H.size();
    std::vector<double> haar;
    {
        auto w = haar_measure(H, cfg).weights();
        haar.reserve(n);
        for (const auto& v : w) haar.push_back(to_double(v));
    }

    std::vector<std::vector<Complex>> rows;
    if (n == 1) {
        rows = {{Complex(1.0, 0.0)}};
    } else {
        // Characters are the joint eigenvectors of the transposed translation
        // matrices; a random combination separates the joint eigenspaces.
        std::vector<Eigen::MatrixXd> B(n, Eigen::MatrixXd(n, n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) B[i](j, k) = to_double(H.c(i, j, k));

        std::uint64_t state = cfg.seed ? cfg.seed : 1;
        auto next = [&state] {
            // xorshift64*, fixed across platforms
            state ^= state >> 12;
            state ^= state << 25;
            state ^= state >> 27;
            return state * 0x2545F4914F6CDD1Dull;
        };

        std::string last_reason = "spectral clustering";
        bool solved = false;
        for (int attempt = 0; attempt < cfg.max_spectral_retries && !solved; ++attempt) {
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
            for (int i = 0; i < n; ++i) M += uniform12(next()) * B[i];
            Eigen::EigenSolver<Eigen::MatrixXd> es(M);
            if (es.info() != Eigen::Success) fail(errc::non_diagonalizable, "eigensolver failed");
            Eigen::VectorXcd lam = es.eigenvalues();
            double scale = 1.0;
            for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(lam(i)));
            double gap = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) gap = std::min(gap, std::abs(lam(i) - lam(j)));
            if (gap < 1e-6 * scale) {
                last_reason = "spectral clustering (gap " + fmt_real(gap) + ")";
                continue;
            }
            Eigen::MatrixXcd V = es.eigenvectors();
            std::vector<std::vector<Complex>> cand(n, std::vector<Complex>(n));
            bool usable = true;
            for (int r = 0; r < n && usable; ++r) {
                Complex at_e = V(H.identity(), r);
                if (std::abs(at_e) < 1e-8) {
                    usable = false;
                    last_reason = "eigenvector vanishes at identity";
                    break;
                }
                for (int x = 0; x < n; ++x) cand[r][x] = V(x, r) / at_e;
            }
            if (!usable) continue;
            VerifyOutcome v = verify_rows(H, cand, haar, cfg);
            if (!v.ok) {
                last_reason = v.why;
                continue;
            }
            rows = std::move(cand);
            solved = true;
        }
        if (!solved)
            fail(errc::degenerate_spectrum,
                 "no attempt produced a verified character basis (" + last_reason + ")");
    }

    // Canonical row order: trivial character first, then lexicographic on
    // quantized (re, im) value vectors.
    std::vector<int> order(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) order[r] = static_cast<int>(r);
    auto quant = [](double x) { return static_cast<long long>(llround(x * 1e6)); };
    int trivial = -1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double d = 0.0;
        for (const auto& v : rows[r]) d = std::max(d, std::abs(v - 1.0));
        if (d <= cfg.tau_char * 10) trivial = static_cast<int>(r);
    }
    if (trivial < 0) fail(errc::degenerate_spectrum, "trivial character missing from basis");
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (a == trivial || b == trivial) return a == trivial && b != trivial;
        const auto& ra = rows[a];
        const auto& rb = rows[b];
        for (std::size_t k = 0; k < ra.size(); ++k) {
            auto qa = std::make_pair(quant(ra[k].real()), quant(ra[k].imag()));
            auto qb = std::make_pair(quant(rb[k].real()), quant(rb[k].imag()));
            if (qa != qb) return qa < qb;
        }
        return false;
    });

    CharacterTable table;
    TableBuilder::fill(table, order, rows, haar, H.identity(), H.involution(), H.names(), cfg);
    return table;
}

DualHypergroup dual_hypergroup(const CharacterTable& table, const Config& cfg) {
    const int n = table.rows();
    const int nx = table.columns();
    RawRealHypergroup raw;
    raw.names.reserve(n);
    for (int r = 0; r < n; ++r) raw.names.push_back("chi" + std::to_string(r));
    raw.identity = 0;
    raw.involution.resize(n);
    for (int r = 0; r < n; ++r) raw.involution[r] = table.conj_row(r);
    raw.tensor.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    const auto& w = table.haar_weights();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Complex acc = 0.0;
                for (int x = 0; x < nx; ++x)
                    acc += w[x] * table.value(i, x) * table.value(j, x) * std::conj(table.value(k, x));
                acc *= table.dual_weight(k);
                if (std::abs(acc.imag()) > 10 * cfg.tau_char)
                    fail(errc::internal_inconsistency, "complex dual coefficient at (" +
                                                           std::to_string(i) + "," + std::to_string(j) +
                                                           "," + std::to_string(k) + ")");
                if (acc.real() < -cfg.tau_char)
                    fail(errc::not_strong, "negative dual coefficient " + fmt_real(acc.real()) +
                                               " at (chi" + std::to_string(i) + ",chi" +
                                               std::to_string(j) + ",chi" + std::to_string(k) + ")");
                raw.at(i, j, k) = acc.real();
                raw.at(j, i, k) = acc.real();
            }
    DualHypergroup dual{RealHypergroup::create(std::move(raw), cfg, cfg.tau_char), table};
    return dual;
}

template <class S>
std::vector<int> annihilator(const HypergroupT<S>& host, const CharacterTable& table,
                             const Subhypergroup& sub, const Config& cfg) {
    if (!is_subhypergroup(host, sub.members)) fail(errc::not_subhypergroup, "annihilator of a non-subhypergroup");
    return annihilator(table, sub, cfg);
}

std::vector<int> annihilator(const CharacterTable& table, const Subhypergroup& sub, const Config& cfg) {
    for (int s : sub.members)
        if (s < 0 || s >= table.columns())
            fail(errc::malformed_input, "subset index out of range for the table's host");
    std::vector<int> out;
    for (int r = 0; r < table.rows(); ++r) {
        bool all_one = true;
        for (int s : sub.members)
            if (std::abs(table.value(r, s) - 1.0) > cfg.tau_char) {
                all_one = false;
                break;
            }
        if (all_one) out.push_back(r);
    }
    return out;
}

int restrict_character(const CharacterTable& table_H, const Subhypergroup& H0,
                       const CharacterTable& table_H0, int row, const Config& cfg) {
    const int m = H0.size();
    if (table_H0.columns() != m)
        fail(errc::malformed_input, "subhypergroup table does not match the subset size");
    for (int s : H0.members)
        if (s < 0 || s >= table_H.columns())
            fail(errc::malformed_input, "subset index out of range for the table's host");
    std::vector<Complex> restricted(m);
    for (int t = 0; t < m; ++t) restricted[t] = table_H.value(row, H0.members[t]);
    int best = -1, second = -1;
    double best_d = std::numeric_limits<double>::infinity();
    double second_d = best_d;
    for (int r = 0; r < table_H0.rows(); ++r) {
        double d = row_distance(restricted, table_H0.row(r).values);
        if (d < best_d) {
            second = best;
            second_d = best_d;
            best = r;
            best_d = d;
        } else if (d < second_d) {
            second = r;
            second_d = d;
        }
    }
    if (best >= 0 && second >= 0 &&
        row_distance(table_H0.row(best).values, table_H0.row(second).values) < 10 * cfg.tau_char)
        fail(errc::ambiguous_match, "two candidate rows are within 10*tau_char");
    if (best < 0 || best_d > cfg.tau_char)
        fail(errc::no_matching_row,
             "restriction of row " + std::to_string(row) + " is not a character of the subhypergroup");
    return best;
}

template <class S>
Report double_dual_check(const HypergroupT<S>& H, const Config& cfg) {
    Report rep("double-dual");
    CharacterTable table = character_table(H, cfg);
    DualHypergroup dual = dual_hypergroup(table, cfg);
    CharacterTable table2 = character_table(dual.hypergroup, cfg);
    DualHypergroup dual2 = dual_hypergroup(table2, cfg);

    const int n = H.size();
    rep.add("elements", static_cast<long long>(n));
    // Every x in H gives the evaluation character chi -> chi(x) on the dual;
    // these must exhaust the rows of the double dual's table.
    std::vector<int> match(n, -1);
    std::vector<char> used(n, 0);
    double worst = 0.0;
    for (int x = 0; x < n; ++x) {
        std::vector<Complex> candidate(n);
        for (int r = 0; r < n; ++r) candidate[r] = table.value(r, x);
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int r = 0; r < n; ++r) {
            double d = row_distance(candidate, table2.row(r).values);
            if (d < best_d) {
                best = r;
                best_d = d;
            }
        }
        if (best < 0 || best_d > cfg.tau_char || used[best]) {
            rep.add("evaluation_match", "element " + H.name(x) + " unmatched");
            rep.set_failed("evaluation_match");
            return rep;
        }
        used[best] = 1;
        match[x] = best;
        worst = std::max(worst, best_d);
    }
    rep.add("max_row_distance", worst);

    double dev = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                dev = std::max(dev, std::abs(to_double(H.c(i, j, k)) -
                                             dual2.hypergroup.c(match[i], match[j], match[k])));
    rep.add("max_tensor_deviation", dev);
    if (dev > cfg.tau_char) rep.set_failed("max_tensor_deviation");
    return rep;
}

template CharacterTable character_table(const HypergroupT<Rat>&, const Config&);
template CharacterTable character_table(const HypergroupT<double>&, const Config&);
template Report double_dual_check(const HypergroupT<Rat>&, const Config&);
template Report double_dual_check(const HypergroupT<double>&, const Config&);
template std::vector<int> annihilator(const HypergroupT<Rat>&, const CharacterTable&,
                                      const Subhypergroup&, const Config&);
template std::vector<int> annihilator(const HypergroupT<double>&, const CharacterTable&,
                                      const Subhypergroup&, const Config&);

} // namespace hgk
