#pragma once

#include "hgk/duality.hpp"
#include "hgk/hyperfield.hpp"
#include "hgk/hypergroup.hpp"
#include "hgk/report.hpp"

namespace hgk {

/// Everything needed to restrict and induce characters between a strong
/// hypergroup H and a strong subhypergroup H0: both tables, both duals, the
/// annihilator perp = H0^perp with its Haar weights inside H^, the restriction
/// map on rows, and the fibers A(tau) = {chi : res chi = tau}.
struct InductionContext {
    Hypergroup H;
    Subhypergroup H0;
    Hypergroup H0_hypergroup;          ///< H0 as a standalone hypergroup
    CharacterTable table_H;
    CharacterTable table_H0;
    DualHypergroup dual_H;
    DualHypergroup dual_H0;
    std::vector<int> perp;             ///< annihilator indices in H^
    std::vector<double> omega_perp;    ///< Haar weights of perp inside H^
    std::vector<int> res_of;           ///< H^ row -> H0^ row
    std::vector<std::vector<int>> fibers; ///< H0^ row -> A(tau), sorted
    std::vector<int> fiber_rep;        ///< H0^ row -> smallest member of A(tau)
    Config cfg;
};

/// Builds the context. Requires H and H0 strong and the restriction
/// surjective onto H0^ (Error(res_not_surjective) otherwise); checks that
/// every fiber equals the support of delta_rep * omega_perp.
InductionContext build_context(const Hypergroup& H, const Subhypergroup& H0, const Config& cfg = {});

/// Induced character: the perp-invariant probability measure on H^ supported
/// on the fiber of tau, computed as delta_rep * omega_perp in the dual.
std::vector<double> induce(const InductionContext& ctx, int tau);

/// Induction of a product of H0-characters, computed along both routes
/// (decompose in H0^ then average the inductions; convolve the fiber
/// representatives with omega_perp in H^) and cross-checked within tau_char.
/// Error(internal_inconsistency) when the two routes disagree.
std::vector<double> induce_product(const InductionContext& ctx, int tau_i, int tau_j);

/// The two-sheet hypergroup on H^ union H0^ with parameter q.
struct TwoSheet {
    RealHypergroup hypergroup;
    int n_circ;   ///< number of sheet-o elements (rows of H^)
    int n_bullet; ///< number of sheet-* elements (rows of H0^)

    int circ(int pi) const { return pi; }
    int bullet(int tau) const { return n_circ + tau; }
};

/// Assembles the four convolution rules (o/o via H^ constants, o/* via
/// restriction then H0^ constants, */* via q-weighted induction) and validates
/// the result; Error(axiom_failure) names which associativity family
/// (A1)-(A4) failed.
TwoSheet build_two_sheet(const InductionContext& ctx, const Rat& q);

/// Checks the isomorphism of the two-sheet hypergroup with the sheeted
/// extension of H^ by the hyperfield l0 -> {chi_0}, l1 -> H0^perp.
Report verify_sheet_isomorphism(const InductionContext& ctx, const Rat& q);

/// Checks that the dual of the two-sheet hypergroup is the sheeted extension
/// of Z_q(2) over H with assignment h -> {l0} for h in H0, Z_q(2) otherwise,
/// via explicit candidate characters (no blind isomorphism search).
Report verify_sheet_dual(const InductionContext& ctx, const Rat& q);

/// Restriction/induction identities, checked exhaustively at the context's
/// scale: res(ind tau) = tau; multiplicativity of res; compatibility of
/// induction with multiplication by restricted characters; res(ind(t_i t_j)).
Report res_ind_identities(const InductionContext& ctx);

/// The sheeted extension used by verify_sheet_dual, exposed for reports:
/// K(Z_q(2), dual field, H).
SheetedHypergroup dual_side_extension(const Hypergroup& H, const Subhypergroup& H0, const Rat& q,
                                      const Config& cfg = {});

} // namespace hgk
