#pragma once

#include "minsurf/polynomial.hpp"
#include "minsurf/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace minsurf {

// Slot key of a ContactExpr term: arctan(p)^atan_power * q^q_degree.
struct SlotKey {
  unsigned atan_power = 0; // 0 or 1
  unsigned q_degree = 0;
  auto operator<=>(const SlotKey &) const = default;
};

// One unreduced summand arctan(p)^a * q^n * P(p) / (1+p^2)^c, as fed to normalize().
struct RawTerm {
  unsigned atan_power = 0;
  unsigned q_degree = 0;
  PolyP numerator;
  unsigned denom_power = 0;
};

// Canonical exact element of the class
//   sum_{a in {0,1}, n >= 0} arctan(p)^a * q^n * P_{a,n}(p) / (1+p^2)^{c_{a,n}}.
// Two expressions are equal iff their slot maps are identical.
//
// The same type stores symmetry generators phi(u_x, u_y) and solutions
// phi(p, q) of the linearised equation; u_x is p and u_y is q.
class ContactExpr {
public:
  using SlotMap = std::map<SlotKey, RatP>;

  ContactExpr() = default;
  static ContactExpr constant(const Rational &c);
  static ContactExpr p();
  static ContactExpr q();
  static ContactExpr atan_p();
  static ContactExpr one_plus_p2();
  static ContactExpr from_slot(SlotKey key, RatP value);

  const SlotMap &slots() const { return slots_; }
  bool is_zero() const { return slots_.empty(); }
  // -1 for zero.
  int q_degree() const;
  bool has_atan() const;

  ContactExpr operator+(const ContactExpr &o) const;
  ContactExpr operator-(const ContactExpr &o) const;
  ContactExpr operator-() const;
  // Throws ClosureError when an arctan(p)^2 term would appear.
  ContactExpr operator*(const ContactExpr &o) const;
  ContactExpr &operator+=(const ContactExpr &o);
  ContactExpr &operator-=(const ContactExpr &o);

  bool operator==(const ContactExpr &o) const = default;

private:
  friend ContactExpr normalize(std::span<const RawTerm> raw);
  void add_slot(SlotKey key, const RatP &value);
  SlotMap slots_;
};

ContactExpr normalize(std::span<const RawTerm> raw);

ContactExpr add(const ContactExpr &a, const ContactExpr &b);
ContactExpr scale(const ContactExpr &e, const Rational &r);
ContactExpr mul_monomial(const ContactExpr &e, unsigned p_degree, unsigned q_degree);
ContactExpr mul_one_plus_p2(const ContactExpr &e);
ContactExpr div_one_plus_p2(const ContactExpr &e);

ContactExpr diff_p(const ContactExpr &e);
ContactExpr diff_q(const ContactExpr &e);

// (1+p^2) e_pp + 2pq e_pq + (1+q^2) e_qq. Zero exactly when e solves the
// Legendre-transformed minimal surface equation.
ContactExpr pde_residual(const ContactExpr &e);

inline bool is_zero(const ContactExpr &e) { return e.is_zero(); }
inline bool equals(const ContactExpr &a, const ContactExpr &b) { return a == b; }

// Exact coefficients c with e = sum c_i basis_i, or nullopt if e is outside the span.
std::optional<std::vector<Rational>> span_membership(const ContactExpr &e,
                                                     std::span<const ContactExpr> basis);

// Exact parts of e at rational (p, q): e = rational_part + arctan(p) * atan_part.
struct ExactValue {
  Rational rational_part;
  Rational atan_part;
};
ExactValue evaluate_exact(const ContactExpr &e, const Rational &p, const Rational &q);

// Every double is a dyadic rational; (p, q) enter exactly, the two exact parts
// are rounded once each, and arctan is evaluated in double precision.
double evaluate(const ContactExpr &e, double p, double q);

} // namespace minsurf
