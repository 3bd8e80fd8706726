#pragma once
// Test-only oracles. Nothing here calls the symbolic kernel: closed forms are
// hand-written arithmetic, derivatives come from complex steps or central
// differences.

#include "minsurf/contact_expr.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

template <class T> T ipow(T a, int k) {
  T r(1.0);
  for (int i = 0; i < k; ++i)
    r *= a;
  return r;
}

// atan with a complex-step-safe imaginary part.
inline double step_atan(double a) { return std::atan(a); }
inline cd step_atan(cd a) { return {std::atan(a.real()), a.imag() / (1 + a.real() * a.real())}; }

// Hand transcriptions of the closed forms, generic over double / complex.
template <class T> T phi(const std::string &name, T p, T q) {
  const T w = T(1.0) + p * p;
  const T at = step_atan(p);
  if (name == "phi1")
    return T(1.0);
  if (name == "phi2_1")
    return p;
  if (name == "phi2_2")
    return q;
  if (name == "phi5")
    return q * at;
  if (name == "phi6")
    return p * q * q / w + at;
  if (name == "phi7")
    return q * q / w - p * at;
  if (name == "phi8")
    return p * ipow(q, 3) / (w * w) + 1.5 * p * q / w;
  if (name == "phi9")
    return (p * p - 1.0) / (w * w) * ipow(q, 3) - 3.0 * q / w;
  if (name == "phi10")
    return (ipow(p, 3) - 3.0 * p) / ipow(w, 3) * ipow(q, 4) +
           1.5 * (ipow(p, 5) - 2.0 * ipow(p, 3) - 3.0 * p) / ipow(w, 3) * q * q - 1.5 * p / w;
  if (name == "phi11")
    return (3.0 * p * p - 1.0) / ipow(w, 3) * ipow(q, 4) +
           1.5 * (3.0 * ipow(p, 4) + 2.0 * p * p - 1.0) / ipow(w, 3) * q * q + 1.5 * p * p / w;
  if (name == "phi12")
    return (ipow(p, 4) - 6.0 * p * p + 1.0) / ipow(w, 4) * ipow(q, 5) +
           (11.0 * ipow(p, 6) - 49.0 * ipow(p, 4) - 51.0 * p * p + 9.0) / (6.0 * ipow(w, 4)) *
               ipow(q, 3) +
           (2.0 * ipow(p, 8) - 3.0 * ipow(p, 6) - 11.0 * ipow(p, 4) - 5.0 * p * p + 1.0) /
               (2.0 * ipow(w, 4)) * q;
  if (name == "phi12_printed")
    return (ipow(p, 4) - 6.0 * p * p + 6.0) / ipow(w, 4) * ipow(q, 5) +
           (11.0 * ipow(p, 6) - 49.0 * ipow(p, 4) - 51.0 * p * p + 9.0) / (6.0 * ipow(w, 4)) *
               ipow(q, 3) +
           (2.0 * ipow(p, 8) - 3.0 * ipow(p, 6) - 11.0 * ipow(p, 4) - 5.0 * p * p + 1.0) /
               (2.0 * ipow(w, 4)) * q;
  if (name == "phi13")
    return (ipow(p, 3) - p) / ipow(w, 4) * ipow(q, 5) +
           (21.0 * ipow(p, 5) + 2.0 * ipow(p, 3) - 19.0 * p) / (12.0 * ipow(w, 4)) * ipow(q, 3) +
           (3.0 * ipow(p, 7) + 4.0 * ipow(p, 5) - ipow(p, 3) - 2.0 * p) / (4.0 * ipow(w, 4)) * q;
  throw std::invalid_argument("no oracle for " + name);
}

using Fn = std::function<cd(cd, cd)>;

inline Fn named(const std::string &name) {
  return [name](cd p, cd q) { return phi<cd>(name, p, q); };
}

constexpr double kStep = 1e-30;

// Complex-step first derivatives: exact to rounding for analytic f.
inline double d_p(const Fn &f, double p, double q) { return f(cd(p, kStep), cd(q, 0)).imag() / kStep; }
inline double d_q(const Fn &f, double p, double q) { return f(cd(p, 0), cd(q, kStep)).imag() / kStep; }
inline double value(const Fn &f, double p, double q) { return f(cd(p, 0), cd(q, 0)).real(); }

// Operator images evaluated numerically from an oracle function.
inline double rot12(const Fn &f, double p, double q) { return p * d_q(f, p, q) - q * d_p(f, p, q); }
inline double t1(const Fn &f, double p, double q) {
  return -p * value(f, p, q) + (1 + p * p) * d_p(f, p, q) + p * q * d_q(f, p, q);
}
inline double t2(const Fn &f, double p, double q) {
  return -q * value(f, p, q) + (1 + q * q) * d_q(f, p, q) + p * q * d_p(f, p, q);
}

// Central second differences of a real function; h ~ 1e-4 gives ~1e-7 accuracy.
inline double residual_fd(const std::function<double(double, double)> &f, double p, double q, double h = 1e-4) {
  double f0 = f(p, q);
  double fpp = (f(p + h, q) - 2 * f0 + f(p - h, q)) / (h * h);
  double fqq = (f(p, q + h) - 2 * f0 + f(p, q - h)) / (h * h);
  double fpq = (f(p + h, q + h) - f(p + h, q - h) - f(p - h, q + h) + f(p - h, q - h)) / (4 * h * h);
  return (1 + p * p) * fpp + 2 * p * q * fpq + (1 + q * q) * fqq;
}

inline bool close(double a, double b, double rel, double abs_floor = 1.0) {
  return std::abs(a - b) <= rel * std::max(abs_floor, std::max(std::abs(a), std::abs(b)));
}

// Random canonical expressions built from raw terms with small integer data.
class ExprGen {
public:
  explicit ExprGen(unsigned seed) : rng_(seed) {}

  std::vector<minsurf::RawTerm> raw_terms(int max_terms = 4, int max_q = 3, int max_pdeg = 4, int max_c = 3) {
    std::uniform_int_distribution<int> nterms(1, max_terms), a(0, 1), n(0, max_q), deg(0, max_pdeg), c(0, max_c),
        coef(-5, 5), den(1, 4);
    std::vector<minsurf::RawTerm> out;
    int k = nterms(rng_);
    for (int t = 0; t < k; ++t) {
      std::vector<minsurf::Rational> cs;
      int d = deg(rng_);
      for (int i = 0; i <= d; ++i)
        cs.push_back(minsurf::make_rational(coef(rng_), den(rng_)));
      out.push_back({static_cast<unsigned>(a(rng_)), static_cast<unsigned>(n(rng_)), minsurf::PolyP(cs),
                     static_cast<unsigned>(c(rng_))});
    }
    return out;
  }

  minsurf::ContactExpr expr() {
    auto raw = raw_terms();
    return minsurf::normalize(raw);
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
  std::mt19937 rng_;
};

// Double evaluation of raw terms without normalization: an independent check
// of what normalize() must preserve.
inline double eval_raw(const std::vector<minsurf::RawTerm> &raw, double p, double q) {
  double s = 0;
  for (const auto &t : raw) {
    double num = 0;
    const auto &cs = t.numerator.coeffs();
    for (std::size_t i = cs.size(); i-- > 0;)
      num = num * p + cs[i].get_d();
    s += std::pow(std::atan(p), t.atan_power) * std::pow(q, t.q_degree) * num / std::pow(1 + p * p, t.denom_power);
  }
  return s;
}

} // namespace oracle
