#include "minsurf/jet.hpp"

#include "minsurf/errors.hpp"

#include <algorithm>

namespace minsurf {

JetFunction::JetFunction(const ContactExpr &e) { add_term(JetMonomial::one(), e); }

JetFunction JetFunction::term(JetMonomial m, const ContactExpr &coeff) {
  if (m.total() > 1)
    throw DegreeOverflowError("jet monomial of total degree " + std::to_string(m.total()));
  JetFunction f;
  f.add_term(m, coeff);
  return f;
}

void JetFunction::add_term(JetMonomial m, const ContactExpr &coeff) {
  if (coeff.is_zero())
    return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero())
    terms_.erase(it);
}

bool JetFunction::is_pure() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto &kv) { return kv.first.total() == 0; });
}

ContactExpr JetFunction::pure_part() const { return coeff(JetMonomial::one()); }

ContactExpr JetFunction::coeff(JetMonomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ContactExpr{} : it->second;
}

JetFunction JetFunction::operator+(const JetFunction &o) const {
  JetFunction r = *this;
  for (const auto &[m, c] : o.terms_)
    r.add_term(m, c);
  return r;
}

JetFunction JetFunction::operator-(const JetFunction &o) const { return *this + (-o); }

JetFunction JetFunction::operator-() const {
  JetFunction r;
  for (const auto &[m, c] : terms_)
    r.add_term(m, -c);
  return r;
}

JetFunction JetFunction::operator*(const JetFunction &o) const {
  JetFunction r;
  for (const auto &[ma, ca] : terms_) {
    for (const auto &[mb, cb] : o.terms_) {
      JetMonomial m{ma.x_deg + mb.x_deg, ma.y_deg + mb.y_deg, ma.u_deg + mb.u_deg};
      if (m.total() > 1)
        throw DegreeOverflowError("jet product leaves the affine class in (x, y, u)");
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

JetFunction JetFunction::scaled(const Rational &r) const {
  JetFunction out;
  for (const auto &[m, c] : terms_)
    out.add_term(m, scale(c, r));
  return out;
}

JetFunction JetFunction::times(const ContactExpr &e) const { return *this * JetFunction(e); }

namespace {

template <typename Coeff>
JetFunction map_coeffs(const JetFunction &f, Coeff &&op) {
  JetFunction out;
  for (const auto &[m, c] : f.terms())
    out = out + JetFunction::term(m, op(c));
  return out;
}

// Affine jets: d/dv of the v-slot leaves its coefficient.
JetFunction drop_variable(const JetFunction &f, JetMonomial var) { return JetFunction(f.coeff(var)); }

} // namespace

JetFunction partial_x(const JetFunction &f) { return drop_variable(f, JetMonomial::x()); }
JetFunction partial_y(const JetFunction &f) { return drop_variable(f, JetMonomial::y()); }
JetFunction partial_u(const JetFunction &f) { return drop_variable(f, JetMonomial::u()); }

JetFunction partial_p(const JetFunction &f) {
  return map_coeffs(f, [](const ContactExpr &c) { return diff_p(c); });
}

JetFunction partial_q(const JetFunction &f) {
  return map_coeffs(f, [](const ContactExpr &c) { return diff_q(c); });
}

JetFunction total_dx(const JetFunction &f) {
  return partial_x(f) + partial_u(f).times(ContactExpr::p());
}

JetFunction total_dy(const JetFunction &f) {
  return partial_y(f) + partial_u(f).times(ContactExpr::q());
}

JetFunction jacobi_bracket(const JetFunction &f, const JetFunction &g) {
  JetFunction r = total_dx(f) * partial_p(g) - total_dx(g) * partial_p(f);
  r = r + total_dy(f) * partial_q(g) - total_dy(g) * partial_q(f);
  r = r + f * partial_u(g) - g * partial_u(f);
  return r;
}

} // namespace minsurf
