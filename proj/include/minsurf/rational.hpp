#pragma once

#include <gmpxx.h>

#include <string>

namespace minsurf {

// Exact rational in canonical form (positive denominator, coprime parts).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational &r) { return sgn(r) == 0; }

// "n" or "n/d".
inline std::string to_string(const Rational &r) { return r.get_str(); }

} // namespace minsurf
