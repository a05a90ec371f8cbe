#pragma once

#include <optional>

#include "hgk/hypergroup.hpp"

namespace hgk {

struct Isomorphism {
    std::vector<int> map; ///< A index -> B index
    double max_deviation = 0.0;
};

/// Searches for a hypergroup isomorphism A -> B by canonical-invariant grouping
/// (Haar weights, diagonal profiles) with backtracking on ties. Exact scalars
/// compare exactly; mixed/real comparisons use `tol`.
template <class SA, class SB>
std::optional<Isomorphism> find_isomorphism(const HypergroupT<SA>& A, const HypergroupT<SB>& B,
                                            double tol, const Config& cfg = {});

} // namespace hgk
