#include "doctest.h"

#include "minsurf/catalog.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/expr_parser.hpp"
#include "support.hpp"

#include <cmath>

using namespace minsurf;

namespace {

ContactExpr P(const char *s) { return parse(s); }

PolyP poly(std::initializer_list<long> cs) {
  std::vector<Rational> v;
  for (long c : cs)
    v.push_back(make_rational(c));
  return PolyP(v);
}

} // namespace

TEST_SUITE("symkernel") {

TEST_CASE("polynomial division by 1+p^2") {
  PolyP quotient;
  CHECK(poly({0, 1, 0, 1}).divide_by_one_plus_p2(quotient));
  CHECK(quotient == poly({0, 1}));
  CHECK_FALSE(poly({1, 1}).divide_by_one_plus_p2(quotient));
  CHECK(poly({1, 2, 3}).derivative() == poly({2, 6}));
}

TEST_CASE("normalize cancels (1+p^2) factors") {
  std::vector<RawTerm> raw{{0, 0, poly({0, 1, 0, 1}), 1}};
  ContactExpr e = normalize(raw);
  CHECK(e == ContactExpr::p());
  REQUIRE(e.slots().size() == 1);
  CHECK(e.slots().begin()->second.denom_power() == 0);

  std::vector<RawTerm> raw2{{0, 0, poly({0, 1, 0, 1}), 2}};
  ContactExpr e2 = normalize(raw2);
  REQUIRE(e2.slots().size() == 1);
  CHECK(e2.slots().begin()->second.numerator() == poly({0, 1}));
  CHECK(e2.slots().begin()->second.denom_power() == 1);
  CHECK(e2 == P("p/(1+p^2)"));
}

TEST_CASE("normalize prunes zero slots") {
  std::vector<RawTerm> raw{{1, 1, poly({1}), 0}, {0, 2, poly({0}), 0}, {0, 3, poly({2}), 1}, {0, 3, poly({-2}), 1}};
  ContactExpr e = normalize(raw);
  REQUIRE(e.slots().size() == 1);
  auto [key, value] = *e.slots().begin();
  CHECK(key.atan_power == 1);
  CHECK(key.q_degree == 1);
  CHECK(value.numerator() == poly({1}));
  CHECK(value.denom_power() == 0);
}

TEST_CASE("add and scale") {
  auto cat = GeneratorCatalog::builtin();
  auto phi5 = cat.get_pure("phi5");
  CHECK(is_zero(add(phi5, scale(phi5, -1))));
  CHECK(scale(cat.get_pure("phi2_2"), 1) == cat.get_pure("phi2_2"));
  CHECK(is_zero(scale(phi5, 0)));
  CHECK(add(cat.get_pure("phi7"), cat.get_pure("phi1")) == P("q^2/(1+p^2) - p*atan(p) + 1"));
}

TEST_CASE("mul_monomial") {
  CHECK(mul_monomial(ContactExpr::constant(1), 1, 1) == P("p*q"));
  CHECK(mul_monomial(ContactExpr::atan_p(), 1, 0) == P("p*atan(p)"));
  ContactExpr e = mul_monomial(P("p/(1+p^2)"), 1, 0);
  REQUIRE(e.slots().size() == 1);
  CHECK(e.slots().begin()->second.numerator() == poly({0, 0, 1}));
  CHECK(e.slots().begin()->second.denom_power() == 1);
}

TEST_CASE("diff examples") {
  CHECK(diff_p(ContactExpr::atan_p()) == P("1/(1+p^2)"));
  CHECK(diff_q(P("q*atan(p)")) == ContactExpr::atan_p());
  CHECK(diff_p(P("p*q^2/(1+p^2)")) == P("q^2*(1-p^2)/(1+p^2)^2"));
}

TEST_CASE("diff_p of p q^2/(1+p^2) against central differences") {
  ContactExpr d = diff_p(P("p*q^2/(1+p^2)"));
  auto f = [](double p, double q) { return p * q * q / (1 + p * p); };
  oracle::ExprGen gen(11);
  const double h = 1e-5;
  for (int k = 0; k < 10; ++k) {
    double p = gen.uniform(-2, 2), q = gen.uniform(-2, 2);
    double fd = (f(p + h, q) - f(p - h, q)) / (2 * h);
    CHECK(std::abs(evaluate(d, p, q) - fd) < 1e-8);
  }
}

TEST_CASE("pde_residual examples") {
  CHECK(is_zero(pde_residual(P("q*atan(p)"))));
  CHECK(is_zero(pde_residual(ContactExpr::p())));
  CHECK(pde_residual(P("p^2")) == P("2 + 2*p^2"));
  CHECK(is_zero(pde_residual(GeneratorCatalog::builtin().get_pure("phi6"))));
}

TEST_CASE("pde_residual agrees with finite differences") {
  oracle::ExprGen gen(5);
  for (int k = 0; k < 10; ++k) {
    ContactExpr e = gen.expr();
    ContactExpr r = pde_residual(e);
    for (int t = 0; t < 5; ++t) {
      double p = gen.uniform(-1.5, 1.5), q = gen.uniform(-1.5, 1.5);
      double fd = oracle::residual_fd([&](double a, double b) { return evaluate(e, a, b); }, p, q);
      CHECK(oracle::close(evaluate(r, p, q), fd, 1e-4));
    }
  }
}

TEST_CASE("equals and is_zero") {
  auto phi5 = GeneratorCatalog::builtin().get_pure("phi5");
  CHECK(equals(phi5, phi5));
  CHECK(equals(mul_one_plus_p2(P("p/(1+p^2)")), ContactExpr::p()));
  CHECK(equals(phi5, phi5 + ContactExpr()));
  CHECK_FALSE(equals(phi5, ContactExpr::q()));
}

TEST_CASE("span_membership examples") {
  auto cat = GeneratorCatalog::builtin();
  auto phi = [&](const char *n) { return cat.get_pure(n); };

  std::vector<ContactExpr> b1{phi("phi6"), phi("phi1")};
  auto c1 = span_membership(phi("phi6"), b1);
  REQUIRE(c1);
  CHECK((*c1)[0] == 1);
  CHECK((*c1)[1] == 0);

  std::vector<ContactExpr> low{phi("phi1"), phi("phi2_1"), phi("phi2_2")};
  CHECK_FALSE(span_membership(phi("phi5"), low));

  auto c3 = span_membership(recursion_t(1, phi("phi6")) - phi("phi7"), low);
  REQUIRE(c3);
  CHECK((*c3)[0] == 1);
  CHECK((*c3)[1] == 0);
  CHECK((*c3)[2] == 0);

  std::vector<ContactExpr> empty;
  auto c4 = span_membership(ContactExpr(), empty);
  REQUIRE(c4);
  CHECK(c4->empty());
}

TEST_CASE("span_membership reconstructs random combinations") {
  oracle::ExprGen gen(77);
  auto cat = GeneratorCatalog::builtin();
  std::vector<ContactExpr> basis;
  for (const auto &n : h_catalog_names())
    basis.push_back(cat.get_pure(n));
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Rational> coeffs;
    ContactExpr target;
    for (const auto &b : basis) {
      coeffs.push_back(make_rational(gen.integer(-4, 4), gen.integer(1, 3)));
      target += scale(b, coeffs.back());
    }
    auto c = span_membership(target, basis);
    REQUIRE(c);
    CHECK(*c == coeffs);
  }
}

TEST_CASE("parse examples") {
  CHECK(P("q*atan(p)") == GeneratorCatalog::builtin().get_pure("phi5"));
  CHECK(is_zero(P("0")));
  CHECK(P("p*q^2/(1+p^2) + atan(p)") == GeneratorCatalog::builtin().get_pure("phi6"));
  CHECK(P("arctan(p)") == ContactExpr::atan_p());
  CHECK(P(" p * q ") == P("p*q"));
  CHECK(P("-p + 3/2") == P("3/2 - p"));
  CHECK(P("(1+p^2)^2/(1+p^2)") == ContactExpr::one_plus_p2());
  CHECK(format(ContactExpr()) == "0");
}

TEST_CASE("parse errors carry positions") {
  auto expect_error = [](const char *text, const char *fragment) {
    try {
      parse(text);
      FAIL("no error for ", text);
    } catch (const ParseError &e) {
      CHECK_MESSAGE(e.detail().find(fragment) != std::string::npos, e.what());
      CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
  };
  expect_error("p + zeta", "unknown identifier");
  expect_error("atan(p)^2", "arctan power");
  expect_error("atan(p)*atan(p)*q", "arctan power");
  expect_error("1/(1+p)", "non-(1+p^2) denominator");
  expect_error("p/q", "division by q");
  expect_error("1/0", "division by zero");
  expect_error("x + p", "unknown identifier");
  expect_error("(p + q", "");
  expect_error("p +", "");
  CHECK_THROWS_AS(parse_jet("1/x"), ParseError);
  CHECK_THROWS_AS(parse_jet("x*u"), ParseError);
}

TEST_CASE("parse round trip on the catalog") {
  auto cat = GeneratorCatalog::builtin();
  for (const auto &entry : cat.entries()) {
    const auto &g = entry.generator;
    CHECK(parse_jet(format_jet(g)) == g);
    if (g.is_pure())
      CHECK(parse(format(g.pure_part())) == g.pure_part());
  }
}

TEST_CASE("closure: products leaving the class throw") {
  CHECK_THROWS_AS(ContactExpr::atan_p() * P("q*atan(p)"), ClosureError);
  CHECK_NOTHROW(ContactExpr::atan_p() * P("q/(1+p^2)"));
}

TEST_CASE("evaluate_exact splits arctan") {
  auto v = evaluate_exact(P("p*q^2/(1+p^2) + 2*atan(p)"), make_rational(1), make_rational(2));
  CHECK(v.rational_part == 2);
  CHECK(v.atan_part == 2);
  CHECK(evaluate(P("q*atan(p)"), 1.0, 2.0) == doctest::Approx(std::atan(1.0) * 2).epsilon(1e-15));
}

} // TEST_SUITE

TEST_SUITE("symkernel properties") {

TEST_CASE("normalize is idempotent and preserves value") {
  oracle::ExprGen gen(2024);
  for (int k = 0; k < 200; ++k) {
    auto raw = gen.raw_terms();
    ContactExpr e = normalize(raw);
    std::vector<RawTerm> again;
    for (const auto &[key, value] : e.slots())
      again.push_back({key.atan_power, key.q_degree, value.numerator(), value.denom_power()});
    CHECK(normalize(again) == e);
    double p = gen.uniform(-2, 2), q = gen.uniform(-2, 2);
    CHECK(oracle::close(evaluate(e, p, q), oracle::eval_raw(raw, p, q), 1e-10));
  }
}

TEST_CASE("operation outputs are canonical") {
  oracle::ExprGen gen(99);
  auto canonical = [](const ContactExpr &e) {
    for (const auto &[key, value] : e.slots()) {
      if (key.atan_power > 1 || value.is_zero())
        return false;
      PolyP quotient;
      if (value.denom_power() > 0 && value.numerator().divide_by_one_plus_p2(quotient))
        return false;
      if (!value.numerator().coeffs().empty() && value.numerator().coeffs().back() == 0)
        return false;
    }
    return true;
  };
  for (int k = 0; k < 100; ++k) {
    ContactExpr a = gen.expr(), b = gen.expr();
    Rational r = make_rational(gen.integer(-5, 5), gen.integer(1, 5));
    for (const ContactExpr &out : {add(a, b), scale(a, r), mul_monomial(a, 1, 0), mul_monomial(a, 0, 1),
                                   mul_one_plus_p2(a), div_one_plus_p2(a), diff_p(a), diff_q(a), pde_residual(a)})
      CHECK(canonical(out));
  }
}

TEST_CASE("closure under every listed operation, checked numerically") {
  oracle::ExprGen gen(7);
  for (int k = 0; k < 50; ++k) {
    ContactExpr a = gen.expr(), b = gen.expr();
    double p = gen.uniform(-2, 2), q = gen.uniform(-2, 2);
    double va = evaluate(a, p, q), vb = evaluate(b, p, q), w = 1 + p * p;
    CHECK(oracle::close(evaluate(a + b, p, q), va + vb, 1e-10));
    CHECK(oracle::close(evaluate(scale(a, make_rational(-3, 7)), p, q), va * -3.0 / 7.0, 1e-10));
    CHECK(oracle::close(evaluate(mul_monomial(a, 1, 0), p, q), va * p, 1e-10));
    CHECK(oracle::close(evaluate(mul_monomial(a, 0, 1), p, q), va * q, 1e-10));
    CHECK(oracle::close(evaluate(mul_one_plus_p2(a), p, q), va * w, 1e-10));
    CHECK(oracle::close(evaluate(div_one_plus_p2(a), p, q), va / w, 1e-10));
  }
}

TEST_CASE("mixed partials commute") {
  oracle::ExprGen gen(31);
  for (int k = 0; k < 100; ++k) {
    ContactExpr e = gen.expr();
    CHECK(diff_p(diff_q(e)) == diff_q(diff_p(e)));
  }
}

TEST_CASE("pde_residual is linear") {
  oracle::ExprGen gen(41);
  for (int k = 0; k < 50; ++k) {
    ContactExpr e1 = gen.expr(), e2 = gen.expr();
    Rational a = make_rational(gen.integer(-6, 6), gen.integer(1, 4));
    Rational b = make_rational(gen.integer(-6, 6), gen.integer(1, 4));
    CHECK(pde_residual(scale(e1, a) + scale(e2, b)) == scale(pde_residual(e1), a) + scale(pde_residual(e2), b));
  }
}

TEST_CASE("diff_p matches finite differences on random expressions") {
  oracle::ExprGen gen(53);
  const double h = 1e-6;
  for (int k = 0; k < 20; ++k) {
    ContactExpr e = gen.expr();
    ContactExpr d = diff_p(e);
    ContactExpr dq = diff_q(e);
    for (int t = 0; t < 10; ++t) {
      double p = gen.uniform(-2, 2), q = gen.uniform(-2, 2);
      double fd = (evaluate(e, p + h, q) - evaluate(e, p - h, q)) / (2 * h);
      double fdq = (evaluate(e, p, q + h) - evaluate(e, p, q - h)) / (2 * h);
      CHECK_MESSAGE(oracle::close(evaluate(d, p, q), fd, 1e-6), format(e), " at ", p, ",", q);
      CHECK(oracle::close(evaluate(dq, p, q), fdq, 1e-6));
    }
  }
}

TEST_CASE("format then parse is the identity on random expressions") {
  oracle::ExprGen gen(61);
  for (int k = 0; k < 200; ++k) {
    ContactExpr e = gen.expr();
    CHECK(parse(format(e)) == e);
  }
}

} // TEST_SUITE
