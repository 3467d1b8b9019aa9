#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cascade {

/// Exact rational backed by GMP. Arithmetic results are always canonical
/// (positive denominator, reduced).
using Rational = mpq_class;

/// Parses "p" or "p/q" (optional sign on p, q > 0). Throws Error(ParseError).
Rational parse_rational(std::string_view text);

/// Renders "p" for integers and "p/q" otherwise.
std::string to_string(const Rational& value);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace cascade
