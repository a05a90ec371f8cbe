#pragma once

#include <gmpxx.h>

#include <string>

namespace hgk {

/// Exact rational scalar used for all definition-file tensors.
using Rat = mpq_class;

/// Parses "p/q", "p", or "-p/q". Throws Error(parse_error) on anything else.
Rat parse_rational(const std::string& text);

/// Canonical form: "p/q" with gcd(p,q)=1, q>0; "p" when the value is integral.
std::string format_rational(const Rat& v);

inline double to_double(const Rat& v) { return v.get_d(); }
inline double to_double(double v) { return v; }

} // namespace hgk
