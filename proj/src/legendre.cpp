#include "minsurf/legendre.hpp"

#include "minsurf/errors.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>

namespace minsurf {

void GridSpec::validate() const {
  if (!(std::isfinite(p_min) && std::isfinite(p_max) && std::isfinite(q_min) && std::isfinite(q_max)))
    throw std::invalid_argument("grid bounds must be finite");
  if (!(p_min < p_max) || !(q_min < q_max))
    throw std::invalid_argument("grid bounds must satisfy min < max");
  if (p_count < 2 || q_count < 2)
    throw std::invalid_argument("grid counts must be >= 2");
}

double GridSpec::p_at(int i) const {
  return i == p_count - 1 ? p_max : p_min + (p_max - p_min) * i / (p_count - 1);
}

double GridSpec::q_at(int j) const {
  return j == q_count - 1 ? q_max : q_min + (q_max - q_min) * j / (q_count - 1);
}

namespace {

// A ContactExpr slot with integer numerator coefficients:
//   arctan^a q^n (sum_k coeffs[k] p^k) / (scale (1+p^2)^c)
struct CompiledSlot {
  bool atan = false;
  unsigned q_degree = 0;
  unsigned denom_power = 0;
  std::vector<mpz_class> coeffs;
  mpz_class scale;
};

std::vector<CompiledSlot> compile(const ContactExpr &e) {
  std::vector<CompiledSlot> out;
  for (const auto &[key, value] : e.slots()) {
    CompiledSlot s;
    s.atan = key.atan_power == 1;
    s.q_degree = key.q_degree;
    s.denom_power = value.denom_power();
    mpz_class lcm = 1;
    for (const auto &c : value.numerator().coeffs())
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    for (const auto &c : value.numerator().coeffs())
      s.coeffs.push_back(c.get_num() * (lcm / c.get_den()));
    s.scale = lcm;
    out.push_back(std::move(s));
  }
  return out;
}

// Integer powers of a fixed base; powers[k - 1] caches b^k.
class PowerCache {
public:
  explicit PowerCache(mpz_class base) { powers_.push_back(std::move(base)); }
  const mpz_class &operator()(std::size_t k) {
    static const mpz_class one = 1;
    if (k == 0)
      return one;
    while (powers_.size() < k) {
      mpz_class next = powers_.back() * powers_.front();
      powers_.push_back(std::move(next));
    }
    return powers_[k - 1];
  }

private:
  std::vector<mpz_class> powers_;
};

// An expression with p fixed: sum over a in {0,1} of arctan(p)^a times
//   sum_n num_n q^n / den_a
// exact, with one common integer denominator per arctan power.
struct RowExpr {
  struct Term {
    unsigned q_degree = 0;
    mpz_class num;
  };
  std::array<std::vector<Term>, 2> terms;
  std::array<mpz_class, 2> den{1, 1};
  std::array<unsigned, 2> max_q{0, 0};
};

// Exact p = pn/pd (every double is a dyadic rational).
class RowContext {
public:
  explicit RowContext(double p)
      : atan_p(std::atan(p)), pn_(Rational(p).get_num()), pd_(Rational(p).get_den()),
        base_(Rational(p).get_den() * Rational(p).get_den() + Rational(p).get_num() * Rational(p).get_num()) {}

  RowExpr prepare(const std::vector<CompiledSlot> &slots) {
    std::array<std::vector<std::pair<unsigned, Rational>>, 2> values;
    mpz_class acc;
    for (const auto &s : slots) {
      const std::size_t deg = s.coeffs.size() - 1;
      acc = 0;
      for (std::size_t k = 0; k <= deg; ++k) {
        if (sgn(s.coeffs[k]) == 0)
          continue;
        acc += s.coeffs[k] * pn_(k) * pd_(deg - k);
      }
      // N(p) = acc / (scale pd^deg), (1+p^2)^c = base^c / pd^(2c)
      Rational v(acc * pd_(2 * s.denom_power), s.scale * pd_(deg) * base_(s.denom_power));
      v.canonicalize();
      values[s.atan ? 1 : 0].emplace_back(s.q_degree, std::move(v));
    }
    RowExpr row;
    for (int a = 0; a < 2; ++a) {
      mpz_class lcm = 1;
      for (const auto &[n, v] : values[a])
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
      row.den[a] = lcm;
      for (const auto &[n, v] : values[a]) {
        row.terms[a].push_back({n, v.get_num() * (lcm / v.get_den())});
        row.max_q[a] = std::max(row.max_q[a], n);
      }
    }
    return row;
  }

  const double atan_p;

private:
  PowerCache pn_, pd_, base_;
};

// Exact q = qn/qd.
class ColumnContext {
public:
  explicit ColumnContext(double q) : qn_(Rational(q).get_num()), qd_(Rational(q).get_den()) {}

  double eval(const RowExpr &row, double atan_p) {
    std::array<double, 2> parts{0, 0};
    mpz_class acc;
    for (int a = 0; a < 2; ++a) {
      if (row.terms[a].empty())
        continue;
      const unsigned top = row.max_q[a];
      acc = 0;
      for (const auto &t : row.terms[a])
        acc += t.num * qn_(t.q_degree) * qd_(top - t.q_degree);
      Rational v(acc, row.den[a] * qd_(top));
      v.canonicalize();
      parts[a] = v.get_d();
    }
    return row.terms[1].empty() ? parts[0] : parts[0] + atan_p * parts[1];
  }

private:
  PowerCache qn_, qd_;
};

double eval_once(const ContactExpr &e, double p, double q) {
  RowContext row(p);
  ColumnContext col(q);
  return col.eval(row.prepare(compile(e)), row.atan_p);
}

using Vec3 = std::array<double, 3>;

double dot(const Vec3 &a, const Vec3 &b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3 &a, const Vec3 &b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

} // namespace

struct LegendreSurface::Compiled {
  std::array<std::array<std::vector<CompiledSlot>, 6>, 3> coords;
};

LegendreSurface::LegendreSurface(const ContactExpr &phi) : phi_(phi) {
  ContactExpr phi_p = diff_p(phi);
  ContactExpr phi_q = diff_q(phi);
  std::array<ContactExpr, 3> base = {phi_p, phi_q,
                                     mul_monomial(phi_p, 1, 0) + mul_monomial(phi_q, 0, 1) - phi};
  for (int axis = 0; axis < 3; ++axis) {
    auto &c = coords_[axis];
    c[0] = base[axis];
    c[1] = diff_p(c[0]);
    c[2] = diff_q(c[0]);
    c[3] = diff_p(c[1]);
    c[4] = diff_q(c[1]);
    c[5] = diff_q(c[2]);
  }
  auto compiled = std::make_shared<Compiled>();
  for (int axis = 0; axis < 3; ++axis)
    for (int k = 0; k < 6; ++k)
      compiled->coords[axis][k] = compile(coords_[axis][k]);
  compiled_ = std::move(compiled);
}

std::array<double, 3> LegendreSurface::position(double p, double q) const {
  RowContext row(p);
  ColumnContext col(q);
  std::array<double, 3> out{};
  for (int axis = 0; axis < 3; ++axis)
    out[axis] = col.eval(row.prepare(compiled_->coords[axis][0]), row.atan_p);
  return out;
}

// x_p = phi_pp, x_q = phi_pq = y_p, y_q = phi_qq
double LegendreSurface::hessian_det(double p, double q) const {
  RowContext row(p);
  ColumnContext col(q);
  double pp = col.eval(row.prepare(compiled_->coords[0][1]), row.atan_p);
  double pq = col.eval(row.prepare(compiled_->coords[0][2]), row.atan_p);
  double qq = col.eval(row.prepare(compiled_->coords[1][2]), row.atan_p);
  return pp * qq - pq * pq;
}

namespace {

SurfacePoint assemble(double p, double q, const std::array<std::array<double, 6>, 3> &v,
                      const SurfaceOptions &options) {
  auto column = [&](int k) { return Vec3{v[0][k], v[1][k], v[2][k]}; };
  SurfacePoint pt;
  pt.p = p;
  pt.q = q;
  pt.x = v[0][0];
  pt.y = v[1][0];
  pt.z = v[2][0];
  const Vec3 rp = column(1), rq = column(2), rpp = column(3), rpq = column(4), rqq = column(5);
  pt.E = dot(rp, rp);
  pt.F = dot(rp, rq);
  pt.G = dot(rq, rq);
  // EG - F^2 evaluated as |r_p x r_q|^2 (Lagrange identity), which avoids the cancellation.
  const Vec3 normal = cross(rp, rq);
  const double area2 = dot(normal, normal);
  if (!(area2 > options.singular_threshold) || !std::isfinite(area2)) {
    pt.singular = true;
    pt.H = std::nan("");
    return pt;
  }
  const double len = std::sqrt(area2);
  const Vec3 n = {normal[0] / len, normal[1] / len, normal[2] / len};
  pt.L2 = dot(rpp, n);
  pt.M2 = dot(rpq, n);
  pt.N2 = dot(rqq, n);
  pt.H = (pt.E * pt.N2 - 2 * pt.F * pt.M2 + pt.G * pt.L2) / (2 * area2);
  if (!std::isfinite(pt.H)) {
    pt.singular = true;
    pt.H = std::nan("");
  }
  return pt;
}

} // namespace

void LegendreSurface::evaluate_row(double p, std::span<const double> qs, std::span<SurfacePoint> out,
                                   const SurfaceOptions &options) const {
  RowContext row(p);
  std::array<std::array<RowExpr, 6>, 3> prepared;
  for (int axis = 0; axis < 3; ++axis)
    for (int k = 0; k < 6; ++k)
      prepared[axis][k] = row.prepare(compiled_->coords[axis][k]);
  std::array<std::array<double, 6>, 3> v{};
  for (std::size_t j = 0; j < qs.size(); ++j) {
    ColumnContext col(qs[j]);
    for (int axis = 0; axis < 3; ++axis)
      for (int k = 0; k < 6; ++k)
        v[axis][k] = col.eval(prepared[axis][k], row.atan_p);
    out[j] = assemble(p, qs[j], v, options);
  }
}

SurfacePoint LegendreSurface::evaluate(double p, double q, const SurfaceOptions &options) const {
  SurfacePoint pt;
  evaluate_row(p, std::span<const double>(&q, 1), std::span<SurfacePoint>(&pt, 1), options);
  return pt;
}

std::array<double, 3> inverse_legendre_point(const ContactExpr &phi, double p, double q) {
  ContactExpr phi_p = diff_p(phi);
  ContactExpr phi_q = diff_q(phi);
  ContactExpr z = mul_monomial(phi_p, 1, 0) + mul_monomial(phi_q, 0, 1) - phi;
  return {eval_once(phi_p, p, q), eval_once(phi_q, p, q), eval_once(z, p, q)};
}

double hessian_det(const ContactExpr &phi, double p, double q) {
  ContactExpr phi_p = diff_p(phi);
  double pp = eval_once(diff_p(phi_p), p, q);
  double pq = eval_once(diff_q(phi_p), p, q);
  double qq = eval_once(diff_q(diff_q(phi)), p, q);
  return pp * qq - pq * pq;
}

MeanCurvature mean_curvature(const ContactExpr &phi, double p, double q, const SurfaceOptions &options) {
  SurfacePoint pt = LegendreSurface(phi).evaluate(p, q, options);
  return {pt.H, pt.singular};
}

namespace {

SurfaceSample prepare(const GridSpec &grid, const std::string &name) {
  grid.validate();
  SurfaceSample s;
  s.spec = grid;
  s.generator_name = name;
  s.points.resize(grid.node_count());
  return s;
}

void summarize(SurfaceSample &s) {
  s.max_abs_h = 0;
  s.singular_count = 0;
  for (const auto &pt : s.points) {
    if (pt.singular)
      ++s.singular_count;
    else if (std::abs(pt.H) > s.max_abs_h)
      s.max_abs_h = std::abs(pt.H);
  }
}

std::vector<double> q_nodes(const GridSpec &grid) {
  std::vector<double> qs(static_cast<std::size_t>(grid.q_count));
  for (int j = 0; j < grid.q_count; ++j)
    qs[static_cast<std::size_t>(j)] = grid.q_at(j);
  return qs;
}

std::span<SurfacePoint> row_span(SurfaceSample &s, int i) {
  const auto width = static_cast<std::size_t>(s.spec.q_count);
  return std::span<SurfacePoint>(s.points).subspan(static_cast<std::size_t>(i) * width, width);
}

} // namespace

SurfaceSample sample_surface_serial(const ContactExpr &phi, const GridSpec &grid, const std::string &name,
                                    const SurfaceOptions &options) {
  SurfaceSample s = prepare(grid, name);
  const LegendreSurface surface(phi);
  const std::vector<double> qs = q_nodes(grid);
  for (int i = 0; i < grid.p_count; ++i)
    surface.evaluate_row(grid.p_at(i), qs, row_span(s, i), options);
  summarize(s);
  return s;
}

SurfaceSample sample_surface(const ContactExpr &phi, const GridSpec &grid, const std::string &name,
                             const SurfaceOptions &options) {
  SurfaceSample s = prepare(grid, name);
  const LegendreSurface surface(phi);
  const std::vector<double> qs = q_nodes(grid);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < grid.p_count; ++i)
    surface.evaluate_row(grid.p_at(i), qs, row_span(s, i), options);
  summarize(s);
  return s;
}

double helicoid_check(const SurfaceSample &sample) {
  if (sample.generator_name != "phi5")
    throw WrongGeneratorError("helicoid check needs a phi5 sample, got '" + sample.generator_name + "'");
  double worst = 0;
  for (const auto &pt : sample.points) {
    if (pt.singular)
      continue;
    worst = std::max(worst, std::abs(pt.z - pt.x * std::tan(pt.y)));
  }
  return worst;
}

bool tangency_check(const ContactExpr &phi) {
  const LegendreSurface s(phi);
  const ContactExpr &x_p = s.coordinate(0, 1), &x_q = s.coordinate(0, 2);
  const ContactExpr &y_p = s.coordinate(1, 1), &y_q = s.coordinate(1, 2);
  const ContactExpr &z_p = s.coordinate(2, 1), &z_q = s.coordinate(2, 2);
  ContactExpr dp = z_p - mul_monomial(x_p, 1, 0) - mul_monomial(y_p, 0, 1);
  ContactExpr dq = z_q - mul_monomial(x_q, 1, 0) - mul_monomial(y_q, 0, 1);
  return dp.is_zero() && dq.is_zero();
}

} // namespace minsurf
