#include "minsurf/polynomial.hpp"

#include <algorithm>
#include <utility>

namespace minsurf {

PolyP::PolyP(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

PolyP PolyP::constant(const Rational &c) { return monomial(c, 0); }

PolyP PolyP::monomial(const Rational &c, std::size_t exponent) {
  std::vector<Rational> v(exponent + 1);
  v[exponent] = c;
  return PolyP(std::move(v));
}

PolyP PolyP::one_plus_p2() { return PolyP({Rational(1), Rational(0), Rational(1)}); }

void PolyP::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0)
    coeffs_.pop_back();
}

Rational PolyP::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

std::size_t PolyP::term_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const Rational &c) { return sgn(c) != 0; }));
}

PolyP PolyP::operator+(const PolyP &o) const {
  std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    v[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
    v[k] += o.coeffs_[k];
  return PolyP(std::move(v));
}

PolyP PolyP::operator-(const PolyP &o) const { return *this + (-o); }

PolyP PolyP::operator-() const {
  PolyP r = *this;
  for (auto &c : r.coeffs_)
    c = -c;
  return r;
}

PolyP PolyP::operator*(const PolyP &o) const {
  if (is_zero() || o.is_zero())
    return {};
  std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0)
      continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return PolyP(std::move(v));
}

PolyP PolyP::scaled(const Rational &r) const {
  if (sgn(r) == 0)
    return {};
  PolyP out = *this;
  for (auto &c : out.coeffs_)
    c *= r;
  return out;
}

PolyP PolyP::shifted(std::size_t k) const {
  if (is_zero() || k == 0)
    return *this;
  std::vector<Rational> v(k);
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return PolyP(std::move(v));
}

PolyP PolyP::derivative() const {
  if (coeffs_.size() <= 1)
    return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    v[k - 1] = coeffs_[k] * static_cast<long>(k);
  return PolyP(std::move(v));
}

bool PolyP::divide_by_one_plus_p2(PolyP &quotient) const {
  if (is_zero()) {
    quotient = {};
    return true;
  }
  if (coeffs_.size() < 3)
    return false;
  std::vector<Rational> rem = coeffs_;
  std::vector<Rational> quo(coeffs_.size() - 2);
  for (std::size_t k = rem.size() - 1; k >= 2; --k) {
    quo[k - 2] = rem[k];
    rem[k - 2] -= rem[k];
    rem[k] = 0;
  }
  if (sgn(rem[0]) != 0 || sgn(rem[1]) != 0)
    return false;
  quotient = PolyP(std::move(quo));
  return true;
}

PolyP PolyP::times_one_plus_p2_pow(unsigned power) const {
  PolyP out = *this;
  for (unsigned i = 0; i < power; ++i)
    out = out + out.shifted(2);
  return out;
}

Rational PolyP::evaluate(const Rational &p) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * p + *it;
  return acc;
}

// ---------------------------------------------------------------------------

RatP::RatP(PolyP numerator, unsigned denom_power) : num_(std::move(numerator)), c_(denom_power) {
  reduce();
}

void RatP::reduce() {
  if (num_.is_zero()) {
    c_ = 0;
    return;
  }
  PolyP quotient;
  while (c_ > 0 && num_.divide_by_one_plus_p2(quotient)) {
    num_ = std::move(quotient);
    --c_;
  }
}

PolyP RatP::numerator_at(unsigned target) const { return num_.times_one_plus_p2_pow(target - c_); }

RatP RatP::operator+(const RatP &o) const {
  unsigned c = std::max(c_, o.c_);
  return RatP(numerator_at(c) + o.numerator_at(c), c);
}

RatP RatP::operator-(const RatP &o) const { return *this + (-o); }

RatP RatP::operator-() const {
  RatP r = *this;
  r.num_ = -r.num_;
  return r;
}

RatP RatP::operator*(const RatP &o) const { return RatP(num_ * o.num_, c_ + o.c_); }

RatP RatP::scaled(const Rational &r) const { return RatP(num_.scaled(r), c_); }

RatP RatP::times_poly(const PolyP &poly) const { return RatP(num_ * poly, c_); }

RatP RatP::divided_by_one_plus_p2() const { return RatP(num_, c_ + 1); }

// d/dp [N / (1+p^2)^c] = (N' (1+p^2) - 2c p N) / (1+p^2)^{c+1}
RatP RatP::derivative() const {
  if (c_ == 0)
    return RatP(num_.derivative(), 0);
  PolyP top = num_.derivative().times_one_plus_p2_pow(1) -
              num_.shifted(1).scaled(Rational(2 * static_cast<long>(c_)));
  return RatP(std::move(top), c_ + 1);
}

} // namespace minsurf
