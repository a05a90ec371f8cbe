#pragma once

#include <complex>

#include "hgk/hypergroup.hpp"
#include "hgk/report.hpp"

namespace hgk {

using Complex = std::complex<double>;

/// One character: values indexed by host elements, values[identity] = 1,
/// multiplicative under convolution, hermitian under involution, |value| <= 1.
struct Character {
    std::vector<Complex> values;
};

/// Full character table of a finite commutative hypergroup. Row 0 is the
/// trivial character; rows are canonically sorted so tables are reproducible.
class CharacterTable {
public:
    int rows() const { return static_cast<int>(rows_.size()); }
    int columns() const { return static_cast<int>(haar_.size()); }
    const Character& row(int r) const { return rows_[r]; }
    Complex value(int r, int x) const { return rows_[r].values[x]; }
    /// Index of the conjugate character (the involution of the dual).
    int conj_row(int r) const { return conj_row_[r]; }
    const std::vector<double>& haar_weights() const { return haar_; }
    double dual_weight(int r) const { return dual_weights_[r]; }

    int host_identity() const { return host_identity_; }
    const std::vector<int>& host_involution() const { return host_involution_; }
    const std::vector<std::string>& host_names() const { return host_names_; }

    /// chi(mu) = sum_x mu[x] chi(x) for a weight vector over host elements.
    template <class S>
    Complex eval(int r, const std::vector<S>& weights) const {
        Complex acc = 0.0;
        for (std::size_t x = 0; x < weights.size(); ++x) acc += to_double(weights[x]) * rows_[r].values[x];
        return acc;
    }

    /// Structured-text serialization: "(re, im)" pairs, 12 significant digits,
    /// Haar and dual weights included. Stable byte-for-byte per build.
    std::string to_text() const;

    friend struct TableBuilder;

private:
    std::vector<Character> rows_;
    std::vector<int> conj_row_;
    std::vector<double> haar_;
    std::vector<double> dual_weights_;
    int host_identity_ = 0;
    std::vector<int> host_involution_;
    std::vector<std::string> host_names_;
};

/// Computes the character table: the rows are the joint eigenvectors of the
/// commuting translation matrices, found by eigendecomposition of a seeded
/// random linear combination, normalized at the identity, and re-verified
/// against the character axioms. Retries with fresh coefficients on clustered
/// spectra; Error(degenerate_spectrum) after cfg.max_spectral_retries,
/// Error(non_diagonalizable) when the eigensolver itself fails.
template <class S>
CharacterTable character_table(const HypergroupT<S>& H, const Config& cfg = {});

/// Dual hypergroup of a strong hypergroup, with provenance table.
/// Element r of `hypergroup` is row r of `table`.
struct DualHypergroup {
    RealHypergroup hypergroup;
    CharacterTable table;
};

/// c_dual[i][j][k] = h(chi_k) * sum_x w_x chi_i(x) chi_j(x) conj(chi_k(x)).
/// Throws Error(not_strong) naming the witnessing triple when a coefficient
/// is below -tau_char.
DualHypergroup dual_hypergroup(const CharacterTable& table, const Config& cfg = {});

/// Indices of rows equal to 1 on every element of S (|chi(s)-1| <= tau_char).
/// S must be a subhypergroup of the table's host.
std::vector<int> annihilator(const CharacterTable& table, const Subhypergroup& sub,
                             const Config& cfg = {});

/// As above, but verifies the subhypergroup precondition against the host
/// (Error(not_subhypergroup)).
template <class S>
std::vector<int> annihilator(const HypergroupT<S>& host, const CharacterTable& table,
                             const Subhypergroup& sub, const Config& cfg = {});

/// Restriction of row `row` of `table_H` to the subhypergroup H0, matched to a
/// row of H0's character table. Error(no_matching_row) when the restriction is
/// not a character of H0; Error(ambiguous_match) when two candidate rows are
/// within 10*tau_char of each other.
int restrict_character(const CharacterTable& table_H, const Subhypergroup& H0,
                       const CharacterTable& table_H0, int row, const Config& cfg = {});

/// Double-duality check ("Pontryagin" in finite form): matches the rows of the
/// double dual to the evaluation characters x -> chi(x) and transports the
/// tensor; reports the maximal deviation.
template <class S>
Report double_dual_check(const HypergroupT<S>& H, const Config& cfg = {});

} // namespace hgk
