#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "hgk/constructions.hpp"
#include "hgk/hypergroup.hpp"

namespace hgk::testing {

/// The desk-scale catalog used across suites: deformations, cyclic groups,
/// negation orbits, and their pairwise products and joins up to 24 elements.
struct CatalogEntry {
    std::string label;
    Hypergroup hypergroup;
};

inline std::vector<CatalogEntry> base_catalog() {
    std::vector<CatalogEntry> out;
    for (const char* q : {"1/4", "1/2", "1"})
        out.push_back({std::string("zq2[") + q + "]", zq_family(2, parse_rational(q))});
    out.push_back({"zq3[1/2]", zq_family(3, parse_rational("1/2"))});
    for (int n = 1; n <= 12; ++n) out.push_back({"cyclic" + std::to_string(n), cyclic_group(n)});
    out.push_back({"orbit5", orbit_hypergroup(cyclic_group(5), {negation_of_cyclic(5)})});
    out.push_back({"orbit6", orbit_hypergroup(cyclic_group(6), {negation_of_cyclic(6)})});
    return out;
}

inline std::vector<CatalogEntry> full_catalog(int max_size = 24) {
    auto base = base_catalog();
    std::vector<CatalogEntry> out = base;
    for (std::size_t a = 0; a < base.size(); ++a)
        for (std::size_t b = a; b < base.size(); ++b) {
            if (base[a].hypergroup.size() * base[b].hypergroup.size() <= max_size)
                out.push_back({base[a].label + "x" + base[b].label,
                               direct_product(base[a].hypergroup, base[b].hypergroup)});
            if (base[a].hypergroup.size() + base[b].hypergroup.size() - 1 <= max_size)
                out.push_back({base[a].label + "v" + base[b].label,
                               join(base[a].hypergroup, base[b].hypergroup)});
        }
    return out;
}

/// Independent closed-form oracle for cyclic group characters.
inline std::complex<double> cyclic_character(int N, int k, int x) {
    const double pi = 3.14159265358979323846;
    double angle = 2.0 * pi * k * x / N;
    return {std::cos(angle), std::sin(angle)};
}

inline double to_d(const Rat& v) { return to_double(v); }

} // namespace hgk::testing
