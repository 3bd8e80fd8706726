#pragma once

#include "minsurf/rational.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace minsurf {

// Univariate polynomial in p with rational coefficients. Dense storage;
// trailing zeros are trimmed so the zero polynomial is empty.
class PolyP {
public:
  PolyP() = default;
  explicit PolyP(std::vector<Rational> coeffs);
  static PolyP constant(const Rational &c);
  static PolyP monomial(const Rational &c, std::size_t exponent);
  // 1 + p^2
  static PolyP one_plus_p2();

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coeff(std::size_t k) const;
  const std::vector<Rational> &coeffs() const { return coeffs_; }
  std::size_t term_count() const;

  PolyP operator+(const PolyP &o) const;
  PolyP operator-(const PolyP &o) const;
  PolyP operator-() const;
  PolyP operator*(const PolyP &o) const;
  PolyP scaled(const Rational &r) const;
  PolyP shifted(std::size_t k) const; // times p^k
  PolyP derivative() const;

  // Division by 1 + p^2. Returns true and sets quotient when exact.
  bool divide_by_one_plus_p2(PolyP &quotient) const;
  PolyP times_one_plus_p2_pow(unsigned power) const;

  Rational evaluate(const Rational &p) const;

  bool operator==(const PolyP &o) const = default;

private:
  void trim();
  std::vector<Rational> coeffs_;
};

// numerator / (1 + p^2)^denom_power, reduced so that either denom_power == 0
// or the numerator is not divisible by 1 + p^2.
class RatP {
public:
  RatP() = default;
  RatP(PolyP numerator, unsigned denom_power);

  const PolyP &numerator() const { return num_; }
  unsigned denom_power() const { return c_; }
  bool is_zero() const { return num_.is_zero(); }

  RatP operator+(const RatP &o) const;
  RatP operator-(const RatP &o) const;
  RatP operator-() const;
  RatP operator*(const RatP &o) const;
  RatP scaled(const Rational &r) const;
  RatP times_poly(const PolyP &poly) const;
  RatP divided_by_one_plus_p2() const;
  RatP derivative() const;
  // Numerator brought to denominator (1+p^2)^target, target >= denom_power().
  PolyP numerator_at(unsigned target) const;

  bool operator==(const RatP &o) const = default;

private:
  void reduce();
  PolyP num_;
  unsigned c_ = 0;
};

} // namespace minsurf
