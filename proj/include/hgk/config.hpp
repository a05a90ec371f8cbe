#pragma once

#include <cstdint>

namespace hgk {

/// Numeric and search knobs shared across the library.
///
/// Exact-rational paths ignore the tolerances; they only apply to
/// real-valued tensors (character stage and everything derived from it).
struct Config {
    double tau_axiom = 1e-10;  ///< tolerance for axiom checks on real tensors
    double tau_char = 1e-9;    ///< tolerance for character-stage comparisons
    double support_eps = 1e-7; ///< mass below this counts as zero in real measures
    std::uint64_t seed = 0x9e3779b97f4a7c15ull; ///< PRNG seed for spectral splitting
    int max_spectral_retries = 8;
    int enumeration_size_bound = 24; ///< largest hypergroup enumerate_subhypergroups accepts
};

} // namespace hgk
