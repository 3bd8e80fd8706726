#include "minsurf/contact_expr.hpp"

#include "minsurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace minsurf {

ContactExpr ContactExpr::constant(const Rational &c) {
  return from_slot({0, 0}, RatP(PolyP::constant(c), 0));
}

ContactExpr ContactExpr::p() { return from_slot({0, 0}, RatP(PolyP::monomial(Rational(1), 1), 0)); }

ContactExpr ContactExpr::q() { return from_slot({0, 1}, RatP(PolyP::constant(Rational(1)), 0)); }

ContactExpr ContactExpr::atan_p() { return from_slot({1, 0}, RatP(PolyP::constant(Rational(1)), 0)); }

ContactExpr ContactExpr::one_plus_p2() { return from_slot({0, 0}, RatP(PolyP::one_plus_p2(), 0)); }

ContactExpr ContactExpr::from_slot(SlotKey key, RatP value) {
  if (key.atan_power > 1)
    throw ClosureError("arctan(p) power " + std::to_string(key.atan_power) + " is outside the class");
  ContactExpr e;
  if (!value.is_zero())
    e.slots_.emplace(key, std::move(value));
  return e;
}

void ContactExpr::add_slot(SlotKey key, const RatP &value) {
  if (value.is_zero())
    return;
  auto it = slots_.find(key);
  if (it == slots_.end()) {
    slots_.emplace(key, value);
    return;
  }
  it->second = it->second + value;
  if (it->second.is_zero())
    slots_.erase(it);
}

int ContactExpr::q_degree() const {
  int d = -1;
  for (const auto &[key, value] : slots_)
    d = std::max(d, static_cast<int>(key.q_degree));
  return d;
}

bool ContactExpr::has_atan() const {
  return std::any_of(slots_.begin(), slots_.end(), [](const auto &kv) { return kv.first.atan_power > 0; });
}

ContactExpr ContactExpr::operator+(const ContactExpr &o) const {
  ContactExpr r = *this;
  r += o;
  return r;
}

ContactExpr ContactExpr::operator-(const ContactExpr &o) const {
  ContactExpr r = *this;
  r -= o;
  return r;
}

ContactExpr ContactExpr::operator-() const {
  ContactExpr r = *this;
  for (auto &[key, value] : r.slots_)
    value = -value;
  return r;
}

ContactExpr &ContactExpr::operator+=(const ContactExpr &o) {
  for (const auto &[key, value] : o.slots_)
    add_slot(key, value);
  return *this;
}

ContactExpr &ContactExpr::operator-=(const ContactExpr &o) {
  for (const auto &[key, value] : o.slots_)
    add_slot(key, -value);
  return *this;
}

ContactExpr ContactExpr::operator*(const ContactExpr &o) const {
  ContactExpr r;
  for (const auto &[ka, va] : slots_) {
    for (const auto &[kb, vb] : o.slots_) {
      SlotKey key{ka.atan_power + kb.atan_power, ka.q_degree + kb.q_degree};
      if (key.atan_power > 1)
        throw ClosureError("product contains arctan(p)^2");
      r.add_slot(key, va * vb);
    }
  }
  return r;
}

ContactExpr normalize(std::span<const RawTerm> raw) {
  ContactExpr e;
  for (const auto &t : raw) {
    if (t.atan_power > 1)
      throw ClosureError("raw term with arctan(p)^" + std::to_string(t.atan_power));
    e.add_slot({t.atan_power, t.q_degree}, RatP(t.numerator, t.denom_power));
  }
  return e;
}

ContactExpr add(const ContactExpr &a, const ContactExpr &b) { return a + b; }

ContactExpr scale(const ContactExpr &e, const Rational &r) {
  if (sgn(r) == 0)
    return {};
  ContactExpr out;
  for (const auto &[key, value] : e.slots())
    out += ContactExpr::from_slot(key, value.scaled(r));
  return out;
}

ContactExpr mul_monomial(const ContactExpr &e, unsigned p_degree, unsigned q_degree) {
  ContactExpr out;
  for (const auto &[key, value] : e.slots()) {
    RatP shifted(value.numerator().shifted(p_degree), value.denom_power());
    out += ContactExpr::from_slot({key.atan_power, key.q_degree + q_degree}, std::move(shifted));
  }
  return out;
}

ContactExpr mul_one_plus_p2(const ContactExpr &e) {
  ContactExpr out;
  for (const auto &[key, value] : e.slots())
    out += ContactExpr::from_slot(key, value.times_poly(PolyP::one_plus_p2()));
  return out;
}

ContactExpr div_one_plus_p2(const ContactExpr &e) {
  ContactExpr out;
  for (const auto &[key, value] : e.slots())
    out += ContactExpr::from_slot(key, value.divided_by_one_plus_p2());
  return out;
}

// d/dp of arctan(p)^a q^n R(p) = a q^n R(p)/(1+p^2) + arctan(p)^a q^n R'(p)
ContactExpr diff_p(const ContactExpr &e) {
  ContactExpr out;
  for (const auto &[key, value] : e.slots()) {
    out += ContactExpr::from_slot(key, value.derivative());
    if (key.atan_power == 1)
      out += ContactExpr::from_slot({0, key.q_degree}, value.divided_by_one_plus_p2());
  }
  return out;
}

ContactExpr diff_q(const ContactExpr &e) {
  ContactExpr out;
  for (const auto &[key, value] : e.slots()) {
    if (key.q_degree == 0)
      continue;
    out += ContactExpr::from_slot({key.atan_power, key.q_degree - 1},
                                  value.scaled(Rational(static_cast<long>(key.q_degree))));
  }
  return out;
}

ContactExpr pde_residual(const ContactExpr &e) {
  ContactExpr ep = diff_p(e);
  ContactExpr e_pp = diff_p(ep);
  ContactExpr e_pq = diff_q(ep);
  ContactExpr e_qq = diff_q(diff_q(e));
  ContactExpr r = mul_one_plus_p2(e_pp);
  r += scale(mul_monomial(e_pq, 1, 1), Rational(2));
  r += e_qq;
  r += mul_monomial(e_qq, 0, 2);
  return r;
}

namespace {

// Row-reduces [A | b] in place; returns a solution with free variables at 0.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> rows, std::size_t unknowns) {
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][col]) == 0)
      ++pivot;
    if (pivot == rows.size())
      continue;
    std::swap(rows[rank], rows[pivot]);
    Rational inv = 1 / rows[rank][col];
    for (auto &v : rows[rank])
      v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][col]) == 0)
        continue;
      Rational f = rows[r][col];
      for (std::size_t k = col; k <= unknowns; ++k)
        rows[r][k] -= f * rows[rank][k];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (sgn(rows[r][unknowns]) != 0)
      return std::nullopt;
  std::vector<Rational> x(unknowns);
  for (std::size_t r = 0; r < rank; ++r)
    x[pivot_cols[r]] = rows[r][unknowns];
  return x;
}

} // namespace

std::optional<std::vector<Rational>> span_membership(const ContactExpr &e, std::span<const ContactExpr> basis) {
  const std::size_t m = basis.size();
  std::set<SlotKey> keys;
  for (const auto &[key, value] : e.slots())
    keys.insert(key);
  for (const auto &b : basis)
    for (const auto &[key, value] : b.slots())
      keys.insert(key);

  std::vector<std::vector<Rational>> rows;
  for (const SlotKey &key : keys) {
    unsigned c = 0;
    auto common = [&](const ContactExpr &x) {
      auto it = x.slots().find(key);
      if (it != x.slots().end())
        c = std::max(c, it->second.denom_power());
    };
    common(e);
    for (const auto &b : basis)
      common(b);

    auto flatten = [&](const ContactExpr &x) {
      auto it = x.slots().find(key);
      return it == x.slots().end() ? PolyP{} : it->second.numerator_at(c);
    };
    std::vector<PolyP> cols;
    cols.reserve(m);
    for (const auto &b : basis)
      cols.push_back(flatten(b));
    PolyP target = flatten(e);

    int deg = target.degree();
    for (const auto &col : cols)
      deg = std::max(deg, col.degree());
    for (int k = 0; k <= deg; ++k) {
      std::vector<Rational> row(m + 1);
      for (std::size_t j = 0; j < m; ++j)
        row[j] = cols[j].coeff(static_cast<std::size_t>(k));
      row[m] = target.coeff(static_cast<std::size_t>(k));
      rows.push_back(std::move(row));
    }
  }
  return solve_exact(std::move(rows), m);
}

ExactValue evaluate_exact(const ContactExpr &e, const Rational &p, const Rational &q) {
  ExactValue out;
  const Rational base = 1 + p * p;
  for (const auto &[key, value] : e.slots()) {
    Rational v = value.numerator().evaluate(p);
    Rational den = 1;
    for (unsigned i = 0; i < value.denom_power(); ++i)
      den *= base;
    v /= den;
    for (unsigned i = 0; i < key.q_degree; ++i)
      v *= q;
    (key.atan_power == 0 ? out.rational_part : out.atan_part) += v;
  }
  return out;
}

double evaluate(const ContactExpr &e, double p, double q) {
  ExactValue v = evaluate_exact(e, Rational(p), Rational(q));
  double result = v.rational_part.get_d();
  if (sgn(v.atan_part) != 0)
    result += std::atan(p) * v.atan_part.get_d();
  return result;
}

} // namespace minsurf
