#pragma once

#include "hgk/hypergroup.hpp"

namespace hgk {

/// The cyclic group Z_N as a hypergroup (N >= 1).
Hypergroup cyclic_group(int n, const Config& cfg = {});

/// Raw tensor of the q-deformed cyclic family (see zq_family); exposed so the
/// axiom checker can be pointed at out-of-range parameters.
RawHypergroup zq_family_raw(int n, const Rat& q);

/// Z_q(n), 0 < q <= 1: for n = 2 the order-two deformation
/// eps_1*eps_1 = q eps_0 + (1-q) eps_1; for n in {3,4} the associative
/// one-parameter deformations of Z_n (self-dual, q = 1 gives the group).
/// Every output is re-validated; invalid (n, q) throws Error(axiom_failure).
Hypergroup zq_family(int n, const Rat& q, const Config& cfg = {});

/// Direct product; element (a, b) has index b*|A| + a, so A varies fastest.
template <class S>
HypergroupT<S> direct_product(const HypergroupT<S>& A, const HypergroupT<S>& B, const Config& cfg = {});

/// Hypergroup join H v L: elements H plus L\{l0}; products inside H as in H,
/// h * l = l for l != l0, and l * l' as in L with identity mass replaced by
/// the Haar measure of H.
template <class S>
HypergroupT<S> join(const HypergroupT<S>& H, const HypergroupT<S>& L, const Config& cfg = {});

/// Substitution S(Q x L : Q -> H) for Q = H/H0: the sheeted extension with
/// assignment l0 -> {h0}, l -> H0 otherwise. Delegates to build_K.
Hypergroup substitution(const Hypergroup& H, const Subhypergroup& H0, const Hypergroup& L,
                        const Config& cfg = {});

/// Orbit hypergroup of H under a finite set of automorphisms: elements are the
/// orbits, convolution is the push-forward of the averaged convolutions over
/// orbit representatives. Maps are given as image index vectors; each must
/// preserve the structure constants (Error(not_automorphism) otherwise).
Hypergroup orbit_hypergroup(const Hypergroup& H, const std::vector<std::vector<int>>& automorphisms,
                            const Config& cfg = {});

/// Orbits (connected components) of the element set under the given maps,
/// each sorted, listed in order of smallest member.
std::vector<std::vector<int>> orbit_partition(const Hypergroup& H,
                                              const std::vector<std::vector<int>>& automorphisms);

/// The negation automorphism x -> -x of cyclic_group(n).
std::vector<int> negation_of_cyclic(int n);

/// Subgroup of cyclic_group(N) of order d (requires d | N).
Subhypergroup cyclic_subgroup(const Hypergroup& zn, int d);

} // namespace hgk
