#pragma once

#include "minsurf/contact_expr.hpp"

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace minsurf {

// Rectangular parameter grid in (p, q). Node (i, j) sits at
// p = p_min + i (p_max - p_min)/(p_count - 1), likewise for q.
struct GridSpec {
  double p_min = -2.0;
  double p_max = 2.0;
  double q_min = -2.0;
  double q_max = 2.0;
  int p_count = 50;
  int q_count = 50;

  static GridSpec default_grid() { return {}; }
  // Throws std::invalid_argument when bounds are not increasing or counts < 2.
  void validate() const;
  double p_at(int i) const;
  double q_at(int j) const;
  std::size_t node_count() const { return static_cast<std::size_t>(p_count) * static_cast<std::size_t>(q_count); }
  bool operator==(const GridSpec &) const = default;
};

struct SurfacePoint {
  double p = 0, q = 0;
  double x = 0, y = 0, z = 0;
  double E = 0, F = 0, G = 0;
  double L2 = 0, M2 = 0, N2 = 0;
  double H = 0; // meaningful only when !singular
  bool singular = false;
};

struct SurfaceSample {
  GridSpec spec;
  std::vector<SurfacePoint> points; // row-major: index i * q_count + j
  std::string generator_name;
  double max_abs_h = 0;
  int singular_count = 0;

  const SurfacePoint &at(int i, int j) const {
    return points[static_cast<std::size_t>(i) * static_cast<std::size_t>(spec.q_count) + static_cast<std::size_t>(j)];
  }
};

struct SurfaceOptions {
  // Nodes with EG - F^2 <= singular_threshold are flagged singular.
  double singular_threshold = 1e-12;
};

// Symbolic data for the inverse Legendre image
//   x = phi_p, y = phi_q, z = p phi_p + q phi_q - phi
// with first and second partials of (x, y, z), computed once per surface.
class LegendreSurface {
public:
  explicit LegendreSurface(const ContactExpr &phi);

  const ContactExpr &phi() const { return phi_; }
  std::array<double, 3> position(double p, double q) const;
  double hessian_det(double p, double q) const;
  SurfacePoint evaluate(double p, double q, const SurfaceOptions &options = {}) const;
  // All nodes (p, qs[j]); the p-dependent parts are evaluated once per row.
  void evaluate_row(double p, std::span<const double> qs, std::span<SurfacePoint> out,
                    const SurfaceOptions &options = {}) const;

  // index: 0 = value, 1 = d/dp, 2 = d/dq, 3 = d2/dp2, 4 = d2/dpdq, 5 = d2/dq2
  const ContactExpr &coordinate(int axis, int index) const { return coords_[axis][index]; }

private:
  struct Compiled;
  ContactExpr phi_;
  std::array<std::array<ContactExpr, 6>, 3> coords_;
  std::shared_ptr<const Compiled> compiled_;
};

std::array<double, 3> inverse_legendre_point(const ContactExpr &phi, double p, double q);
double hessian_det(const ContactExpr &phi, double p, double q);

struct MeanCurvature {
  double H = 0;
  bool singular = false;
};
MeanCurvature mean_curvature(const ContactExpr &phi, double p, double q, const SurfaceOptions &options = {});

// OpenMP over grid nodes; output order and bits match sample_surface_serial.
SurfaceSample sample_surface(const ContactExpr &phi, const GridSpec &grid, const std::string &name = {},
                             const SurfaceOptions &options = {});
SurfaceSample sample_surface_serial(const ContactExpr &phi, const GridSpec &grid, const std::string &name = {},
                                    const SurfaceOptions &options = {});

// max |z - x tan y| over nonsingular nodes; WrongGeneratorError unless the sample is phi5.
double helicoid_check(const SurfaceSample &sample);

// z_p == p x_p + q y_p and z_q == p x_q + q y_q as exact identities.
bool tangency_check(const ContactExpr &phi);

} // namespace minsurf
