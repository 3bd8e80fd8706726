#pragma once

#include "minsurf/contact_expr.hpp"

#include <compare>
#include <map>
#include <string>

namespace minsurf {

// Monomial x^x_deg y^y_deg u^u_deg with total degree <= 1.
struct JetMonomial {
  unsigned x_deg = 0;
  unsigned y_deg = 0;
  unsigned u_deg = 0;

  unsigned total() const { return x_deg + y_deg + u_deg; }
  auto operator<=>(const JetMonomial &) const = default;

  static constexpr JetMonomial one() { return {0, 0, 0}; }
  static constexpr JetMonomial x() { return {1, 0, 0}; }
  static constexpr JetMonomial y() { return {0, 1, 0}; }
  static constexpr JetMonomial u() { return {0, 0, 1}; }
};

// sum x^i y^j u^k * C_{ijk}(p, q), affine in (x, y, u). Point symmetry
// generators live here; pure ContactExpr generators are the degree-0 case.
class JetFunction {
public:
  using TermMap = std::map<JetMonomial, ContactExpr>;

  JetFunction() = default;
  JetFunction(const ContactExpr &e); // NOLINT: implicit embedding of the h-subalgebra
  static JetFunction term(JetMonomial m, const ContactExpr &coeff);

  const TermMap &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // True when no x, y, u dependence remains.
  bool is_pure() const;
  // Coefficient of the constant monomial (the whole value when is_pure()).
  ContactExpr pure_part() const;
  ContactExpr coeff(JetMonomial m) const;

  JetFunction operator+(const JetFunction &o) const;
  JetFunction operator-(const JetFunction &o) const;
  JetFunction operator-() const;
  // Throws DegreeOverflowError if the product is not affine in (x, y, u).
  JetFunction operator*(const JetFunction &o) const;
  JetFunction scaled(const Rational &r) const;
  JetFunction times(const ContactExpr &e) const;

  bool operator==(const JetFunction &o) const = default;

private:
  void add_term(JetMonomial m, const ContactExpr &coeff);
  TermMap terms_;
};

JetFunction partial_x(const JetFunction &f);
JetFunction partial_y(const JetFunction &f);
JetFunction partial_u(const JetFunction &f);
JetFunction partial_p(const JetFunction &f);
JetFunction partial_q(const JetFunction &f);
// D_x = d/dx + p d/du, D_y = d/dy + q d/du
JetFunction total_dx(const JetFunction &f);
JetFunction total_dy(const JetFunction &f);

// Jacobi bracket of first-order contact generators:
//   {f, g} = sum_i (D_i f * dg/dp_i - D_i g * df/dp_i) + f * dg/du - g * df/du
// with p_1 = p, p_2 = q.
JetFunction jacobi_bracket(const JetFunction &f, const JetFunction &g);

} // namespace minsurf
