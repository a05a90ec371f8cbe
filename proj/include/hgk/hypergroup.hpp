#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "hgk/config.hpp"
#include "hgk/errors.hpp"
#include "hgk/rational.hpp"

namespace hgk {

/// Unvalidated candidate data for a finite commutative hypergroup.
/// `tensor` is the flattened n^3 array of structure constants,
/// tensor[(i*n + j)*n + k] being the coefficient of delta_k in delta_i * delta_j.
template <class S>
struct RawHypergroupT {
    std::vector<std::string> names;
    int identity = 0;
    std::vector<int> involution;
    std::vector<S> tensor;

    int size() const { return static_cast<int>(names.size()); }
    S& at(int i, int j, int k) { return tensor[(static_cast<std::size_t>(i) * names.size() + j) * names.size() + k]; }
    const S& at(int i, int j, int k) const {
        return tensor[(static_cast<std::size_t>(i) * names.size() + j) * names.size() + k];
    }
};

using RawHypergroup = RawHypergroupT<Rat>;
using RawRealHypergroup = RawHypergroupT<double>;

/// One violated axiom, with the witnessing index tuple.
struct Violation {
    std::string axiom; ///< nonnegative | row-sum | unit | commutative | associative | hermitian | support
    std::vector<int> indices;
    double magnitude = 0.0;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    std::string to_text(const std::vector<std::string>& names) const;
};

template <class S>
class MeasureT;

/// A validated finite commutative hypergroup. Immutable after construction;
/// every operation on it is a pure function.
template <class S>
class HypergroupT {
public:
    using scalar_type = S;

    /// Checks every axiom and reports all violations. Shape errors
    /// (dimension mismatch, involution not a permutation) throw
    /// Error(malformed_input) instead of being reported.
    /// For real scalars, comparisons use `tol` when >= 0, else cfg.tau_axiom.
    static ValidationReport validate(const RawHypergroupT<S>& raw, const Config& cfg = {}, double tol = -1.0);

    /// Validates and wraps; throws Error(axiom_failure) carrying the report text.
    static HypergroupT create(RawHypergroupT<S> raw, const Config& cfg = {}, double tol = -1.0);

    int size() const { return static_cast<int>(names_.size()); }
    int identity() const { return identity_; }
    int inv(int i) const { return involution_[i]; }
    const std::vector<int>& involution() const { return involution_; }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    const S& c(int i, int j, int k) const {
        return tensor_[(static_cast<std::size_t>(i) * names_.size() + j) * names_.size() + k];
    }
    std::span<const S> slice(int i, int j) const {
        return {tensor_.data() + (static_cast<std::size_t>(i) * names_.size() + j) * names_.size(),
                names_.size()};
    }
    /// Indices k with c(i,j,k) != 0 (real case: |c| > support threshold).
    const std::vector<int>& support(int i, int j) const {
        return support_[static_cast<std::size_t>(i) * names_.size() + j];
    }

    MeasureT<S> dirac(int i) const;

    const RawHypergroupT<S>& raw() const { return raw_; }

private:
    explicit HypergroupT(RawHypergroupT<S> raw, double support_tol);

    RawHypergroupT<S> raw_; // kept for serialization round-trips
    std::vector<std::string> names_;
    int identity_;
    std::vector<int> involution_;
    std::vector<S> tensor_;
    std::vector<std::vector<int>> support_;
};

using Hypergroup = HypergroupT<Rat>;
using RealHypergroup = HypergroupT<double>;

/// Finitely supported weighted distribution over the elements of a host
/// hypergroup. The host is referenced, not owned; it must outlive the measure.
template <class S>
class MeasureT {
public:
    MeasureT(const HypergroupT<S>& host, std::vector<S> weights);

    static MeasureT dirac(const HypergroupT<S>& host, int i);

    const HypergroupT<S>& host() const { return *host_; }
    const std::vector<S>& weights() const { return weights_; }
    const S& operator[](int i) const { return weights_[i]; }
    int size() const { return static_cast<int>(weights_.size()); }

    S total() const;

private:
    const HypergroupT<S>* host_;
    std::vector<S> weights_;
};

using Measure = MeasureT<Rat>;
using RealMeasure = MeasureT<double>;

/// Bilinear convolution; result[k] = sum_{i,j} mu[i] nu[j] c(i,j,k).
/// Throws Error(host_mismatch) when the two measures live on different hosts.
template <class S>
MeasureT<S> convolve(const MeasureT<S>& mu, const MeasureT<S>& nu);

/// The unique probability measure with delta_x * w = w for every x, obtained by
/// solving the left-invariance linear system (exactly for rational scalars).
/// Throws Error(no_invariant_measure) when the solution space is not a single
/// positive ray (possible only for invalid input).
template <class S>
MeasureT<S> haar_measure(const HypergroupT<S>& H, const Config& cfg = {});

/// Sorted member indices of a subhypergroup, always containing the identity.
struct Subhypergroup {
    std::vector<int> members;

    int size() const { return static_cast<int>(members.size()); }
    bool contains(int i) const;
};

/// identity in S, closed under involution, and supp(delta_i * delta_j) in S.
template <class S>
bool is_subhypergroup(const HypergroupT<S>& H, const std::vector<int>& members);

/// Least subhypergroup containing `seed` (fixpoint of support closure).
template <class S>
Subhypergroup generated_subhypergroup(const HypergroupT<S>& H, const std::vector<int>& seed);

/// All subhypergroups, by closure-driven lattice search, sorted by
/// (size, members). Throws Error(size_bound) when |H| exceeds the configured bound.
template <class S>
std::vector<Subhypergroup> enumerate_subhypergroups(const HypergroupT<S>& H, const Config& cfg = {});

/// Restriction of H to a subhypergroup as a standalone hypergroup.
/// Element k of the result corresponds to H element `sub.members[k]`.
template <class S>
HypergroupT<S> restrict_to_subhypergroup(const HypergroupT<S>& H, const Subhypergroup& sub,
                                         const Config& cfg = {});

/// e(S): normalized Haar measure of the subhypergroup S viewed inside H.
/// Idempotent: e(S) * e(S) = e(S). Throws Error(not_subhypergroup).
template <class S>
MeasureT<S> idempotent_of_subhypergroup(const HypergroupT<S>& H, const Subhypergroup& sub,
                                        const Config& cfg = {});

/// Quotient H/S. Classes are grouped by equal coset measures delta_h * e(S);
/// `class_of` maps source elements to target elements, `class_weights[t]` is
/// the coset measure of target element t over the source elements.
template <class S>
struct QuotientT {
    HypergroupT<S> target;
    std::vector<int> class_of;
    std::vector<std::vector<int>> class_members;
    std::vector<std::vector<S>> class_weights;
};

using Quotient = QuotientT<Rat>;

template <class S>
QuotientT<S> quotient(const HypergroupT<S>& H, const Subhypergroup& sub, const Config& cfg = {});

/// Widens an exact hypergroup to its double-precision image.
RealHypergroup to_real(const Hypergroup& H, const Config& cfg = {});

} // namespace hgk
