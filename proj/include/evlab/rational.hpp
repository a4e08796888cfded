#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace evlab {

using Rational = mpq_class;

/// Parses "4/7", "-3", "0.25" or "1e-3" exactly. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace evlab
