#pragma once

#include "hgk/duality.hpp"
#include "hgk/hypergroup.hpp"
#include "hgk/report.hpp"

namespace hgk {

/// Assignment of a subhypergroup H(l) of the target to every element l of the
/// (discrete) base, subject to H(l0) = {h0}, H(l-) = H(l), and the generation
/// condition on convolution supports.
template <class S>
struct HyperfieldT {
    HypergroupT<S> target;                   ///< H
    HypergroupT<S> base;                     ///< L
    std::vector<Subhypergroup> assignment;   ///< per base element
};

using Hyperfield = HyperfieldT<Rat>;
using RealHyperfield = HyperfieldT<double>;

/// Checks the defining conditions (assignments are subhypergroups; identity
/// and involution constraints; generated-closure containment on convolution
/// supports) plus the implied idempotent identity
/// e(i) * e(j) * e(k) = e(i) * e(j), reporting every violation with witnesses.
template <class S>
ValidationReport validate_hyperfield(const HyperfieldT<S>& field, const Config& cfg = {});

/// The sheeted extension built from a hyperfield: one sheet per base element,
/// carrying the quotient of the target by the assigned subhypergroup.
template <class S>
struct SheetedHypergroupT {
    HypergroupT<S> hypergroup;
    std::vector<int> sheet_of;             ///< element -> base index
    std::vector<int> coset_of;             ///< element -> class index within its sheet
    std::vector<int> sheet_offset;         ///< base index -> first element index
    std::vector<QuotientT<S>> sheets;      ///< base index -> quotient of target
    HyperfieldT<S> field;                  ///< provenance

    int rep_of(int element) const {
        return sheets[sheet_of[element]].class_members[coset_of[element]][0];
    }
    const std::vector<S>& coset_weights(int element) const {
        return sheets[sheet_of[element]].class_weights[coset_of[element]];
    }
};

using SheetedHypergroup = SheetedHypergroupT<Rat>;
using RealSheetedHypergroup = SheetedHypergroupT<double>;

/// Builds the sheeted extension; structure constants come from convolving the
/// five-factor measures in the target and pushing forward to the sheet
/// quotients, weighted by the base constants. Output is validated.
/// Throws Error(hyperfield_invalid) if the field itself does not validate.
template <class S>
SheetedHypergroupT<S> build_K(const HyperfieldT<S>& field, const Config& cfg = {});

/// Dual hyperfield data: the dual field lives over (base = dual of target,
/// target = dual of base), with assignment chi -> annihilator of Y(chi).
struct DualHyperfieldResult {
    RealHyperfield field;                  ///< the dual hyperfield
    CharacterTable target_table;           ///< table of the primal target H
    CharacterTable base_table;             ///< table of the primal base L
    DualHypergroup target_dual;            ///< H^
    DualHypergroup base_dual;              ///< L^
    std::vector<std::vector<int>> Y;       ///< per chi: {l : chi in H(l)^perp}
};

/// Both the target and base must be strong (Error(not_strong) otherwise);
/// the returned field is validated (Error(hyperfield_invalid) if that fails).
template <class S>
DualHyperfieldResult dual_hyperfield(const HyperfieldT<S>& field, const Config& cfg = {});

/// Verifies that the character hypergroup of build_K(field) is isomorphic to
/// the sheeted extension of the dual hyperfield: candidate characters are
/// built from the coset measures, matched bijectively to the computed table,
/// and the structure constants transported within tau_char. Includes the
/// idempotent-transform checks (chi(e(l)), e(chi)(l) in {0,1} and equal).
template <class S>
Report verify_duality(const HyperfieldT<S>& field, const Config& cfg = {});

/// Verifies exactness of 1 -> H -> K -> L -> 1: the target embeds onto sheet
/// zero, and the quotient of K by that sheet is isomorphic to the base.
template <class S>
Report exact_sequence_check(const SheetedHypergroupT<S>& K, const Config& cfg = {});

} // namespace hgk
