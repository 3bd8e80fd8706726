#include "minsurf/expr_parser.hpp"

#include "minsurf/errors.hpp"

#include <cctype>
#include <vector>

namespace minsurf {

namespace {

class Parser {
public:
  Parser(std::string_view text, bool allow_jet) : text_(text), allow_jet_(allow_jet) {}

  JetFunction parse_all() {
    skip_ws();
    if (pos_ == text_.size())
      fail(pos_, "empty expression");
    JetFunction value = expr();
    skip_ws();
    if (pos_ != text_.size())
      fail(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return value;
  }

private:
  [[noreturn]] void fail(std::size_t at, const std::string &message) const { throw ParseError(at, message); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      fail(pos_, std::string("expected '") + c + "'");
  }

  template <typename Op>
  JetFunction guarded(std::size_t at, Op &&op) {
    try {
      return op();
    } catch (const ClosureError &) {
      fail(at, "arctan power > 1 after expansion");
    } catch (const DegreeOverflowError &) {
      fail(at, "product is not affine in x, y, u");
    }
  }

  JetFunction expr() {
    skip_ws();
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    JetFunction value = term();
    if (negate)
      value = -value;
    for (;;) {
      if (accept('+'))
        value = value + term();
      else if (accept('-'))
        value = value - term();
      else
        return value;
    }
  }

  JetFunction term() {
    JetFunction value = power();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('*')) {
        JetFunction rhs = power();
        value = guarded(at, [&] { return value * rhs; });
      } else if (accept('/')) {
        std::size_t divisor_at = pos_;
        JetFunction rhs = power();
        value = divide(value, rhs, divisor_at);
      } else {
        return value;
      }
    }
  }

  JetFunction divide(const JetFunction &num, const JetFunction &den, std::size_t at) {
    if (den.is_zero())
      fail(at, "division by zero");
    if (!den.is_pure())
      fail(at, "division by x, y or u");
    ContactExpr d = den.pure_part();
    if (d.q_degree() > 0)
      fail(at, "division by q");
    if (d.has_atan())
      fail(at, "non-(1+p^2) denominator: arctan(p)");
    const RatP &slot = d.slots().begin()->second;
    // slot = r (1+p^2)^k / (1+p^2)^c
    PolyP rest = slot.numerator();
    unsigned k = 0;
    PolyP quotient;
    while (rest.degree() > 0 && rest.divide_by_one_plus_p2(quotient)) {
      rest = quotient;
      ++k;
    }
    if (rest.degree() != 0)
      fail(at, "non-(1+p^2) denominator");
    Rational inv = 1 / rest.coeff(0);
    JetFunction out;
    for (const auto &[m, c] : num.terms()) {
      ContactExpr e = scale(c, inv);
      for (unsigned i = 0; i < k; ++i)
        e = div_one_plus_p2(e);
      for (unsigned i = 0; i < slot.denom_power(); ++i)
        e = mul_one_plus_p2(e);
      out = out + JetFunction::term(m, e);
    }
    return out;
  }

  JetFunction power() {
    JetFunction base = primary();
    skip_ws();
    std::size_t at = pos_;
    if (!accept('^'))
      return base;
    skip_ws();
    unsigned long exponent = integer_literal(pos_);
    JetFunction result = JetFunction(ContactExpr::constant(Rational(1)));
    for (unsigned long i = 0; i < exponent; ++i)
      result = guarded(at, [&] { return result * base; });
    return result;
  }

  unsigned long integer_literal(std::size_t at) {
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(at, "expected non-negative integer");
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 4)
      fail(start, "exponent too large");
    return std::stoul(digits);
  }

  JetFunction primary() {
    skip_ws();
    if (pos_ >= text_.size())
      fail(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      Rational value(std::string(text_.substr(start, pos_ - start)), 10);
      return JetFunction(ContactExpr::constant(value));
    }
    if (c == '(') {
      ++pos_;
      JetFunction inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (name == "p")
        return JetFunction(ContactExpr::p());
      if (name == "q")
        return JetFunction(ContactExpr::q());
      if (name == "atan" || name == "arctan") {
        expect('(');
        skip_ws();
        std::size_t arg_at = pos_;
        if (!(pos_ < text_.size() && text_[pos_] == 'p'))
          fail(arg_at, "arctan argument must be p");
        ++pos_;
        if (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          fail(arg_at, "arctan argument must be p");
        expect(')');
        return JetFunction(ContactExpr::atan_p());
      }
      if (allow_jet_) {
        if (name == "x")
          return JetFunction::term(JetMonomial::x(), ContactExpr::constant(Rational(1)));
        if (name == "y")
          return JetFunction::term(JetMonomial::y(), ContactExpr::constant(Rational(1)));
        if (name == "u")
          return JetFunction::term(JetMonomial::u(), ContactExpr::constant(Rational(1)));
      }
      fail(start, "unknown identifier '" + std::string(name) + "'");
    }
    fail(pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  bool allow_jet_;
  std::size_t pos_ = 0;
};

std::string p_power(std::size_t k) {
  if (k == 1)
    return "p";
  return "p^" + std::to_string(k);
}

// A single signed summand of the canonical form.
struct Piece {
  bool negative = false;
  std::string body;
};

Piece format_slot(SlotKey key, const RatP &value) {
  Piece piece;
  std::vector<std::string> factors;
  const PolyP &num = value.numerator();
  bool bare_coeff = false;
  if (num.term_count() == 1) {
    std::size_t k = static_cast<std::size_t>(num.degree());
    Rational c = num.coeff(k);
    piece.negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (mag != 1) {
      factors.push_back(mag.get_str());
    } else if (k == 0) {
      bare_coeff = true;
    }
    if (k > 0)
      factors.push_back(p_power(k));
  } else {
    factors.push_back("(" + format(num) + ")");
  }
  if (key.atan_power == 1)
    factors.emplace_back("atan(p)");
  if (key.q_degree == 1)
    factors.emplace_back("q");
  else if (key.q_degree > 1)
    factors.push_back("q^" + std::to_string(key.q_degree));
  if (factors.empty() && bare_coeff)
    factors.emplace_back("1");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0)
      piece.body += '*';
    piece.body += factors[i];
  }
  if (value.denom_power() > 0) {
    piece.body += "/(1+p^2)";
    if (value.denom_power() > 1)
      piece.body += "^" + std::to_string(value.denom_power());
  }
  return piece;
}

std::string join(const std::vector<Piece> &pieces) {
  if (pieces.empty())
    return "0";
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i == 0)
      out += pieces[i].negative ? "-" : "";
    else
      out += pieces[i].negative ? " - " : " + ";
    out += pieces[i].body;
  }
  return out;
}

std::vector<Piece> pieces_of(const ContactExpr &e) {
  std::vector<Piece> pieces;
  // Highest q-degree first, rational part before the arctan part.
  for (auto it = e.slots().rbegin(); it != e.slots().rend();) {
    unsigned n = it->first.q_degree;
    auto group_end = it;
    while (group_end != e.slots().rend() && group_end->first.q_degree == n)
      ++group_end;
    for (auto jt = group_end; jt != it;) {
      --jt;
      pieces.push_back(format_slot(jt->first, jt->second));
    }
    it = group_end;
  }
  return pieces;
}

} // namespace

ContactExpr parse(std::string_view text) {
  return Parser(text, false).parse_all().pure_part();
}

JetFunction parse_jet(std::string_view text) { return Parser(text, true).parse_all(); }

std::string format(const PolyP &poly) {
  std::vector<Piece> pieces;
  for (int k = poly.degree(); k >= 0; --k) {
    Rational c = poly.coeff(static_cast<std::size_t>(k));
    if (sgn(c) == 0)
      continue;
    Piece piece;
    piece.negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (k == 0)
      piece.body = mag.get_str();
    else if (mag == 1)
      piece.body = p_power(static_cast<std::size_t>(k));
    else
      piece.body = mag.get_str() + "*" + p_power(static_cast<std::size_t>(k));
    pieces.push_back(std::move(piece));
  }
  return join(pieces);
}

std::string format(const ContactExpr &e) { return join(pieces_of(e)); }

std::string format_jet(const JetFunction &f) {
  std::vector<Piece> pieces;
  auto emit = [&](JetMonomial m, const char *var) {
    ContactExpr c = f.coeff(m);
    if (c.is_zero())
      return;
    std::vector<Piece> inner = pieces_of(c);
    if (inner.size() == 1) {
      Piece piece = inner.front();
      piece.body = piece.body == "1" ? std::string(var) : std::string(var) + "*" + piece.body;
      pieces.push_back(std::move(piece));
    } else {
      pieces.push_back({false, std::string(var) + "*(" + format(c) + ")"});
    }
  };
  emit(JetMonomial::x(), "x");
  emit(JetMonomial::y(), "y");
  emit(JetMonomial::u(), "u");
  for (auto &piece : pieces_of(f.coeff(JetMonomial::one())))
    pieces.push_back(std::move(piece));
  return join(pieces);
}

} // namespace minsurf
