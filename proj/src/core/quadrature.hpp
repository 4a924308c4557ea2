#pragma once

#include "core/direction_grid.hpp"
#include "core/field.hpp"
#include "core/types.hpp"

#include <cstdint>
#include <functional>

namespace lcbp {

/// Tolerance / budget contract shared by every integration engine.
struct QuadratureConfig {
  /// Relative tolerance; 0 selects the dimension default
  /// (1e-6 for n <= 3, 1e-4 for n = 4, 1e-3 above).
  double rel_tol = 0.0;
  double abs_tol = 1e-12;
  std::int64_t max_evals = 20'000'000;
  std::uint64_t seed = 0;
  /// Node count for the outer sphere grid; 0 selects the default.
  int sphere_points = 0;
  /// Node count for great-subsphere grids; 0 selects the default.
  int subsphere_points = 0;
  /// Sample count for the seeded space integrator used when n >= 5.
  int mc_points = 200'000;

  double resolved_rel_tol(int dim) const;
  int resolved_sphere_points(int dim) const;
  int resolved_subsphere_points(int dim) const;

  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evals_used = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7/K15) panel integration on [a, b].
IntegralResult integrate_interval(const std::function<double(double)>& g,
                                  double a, double b,
                                  double rel_tol, double abs_tol,
                                  std::int64_t max_evals);

/// Half-line integral of g over [0, radius] (the decay certificate of the
/// integrand fixes the truncation radius).
IntegralResult integrate_radial(const std::function<double(double)>& g,
                                double radius, const QuadratureConfig& cfg);

/// Surface integral over S^{dim-1}.  The error estimate is the half-grid
/// interleave difference.
IntegralResult integrate_sphere(int dim,
                                const std::function<double(const Vector&)>& h,
                                const QuadratureConfig& cfg);

/// Same, over a caller-supplied grid.
IntegralResult integrate_sphere_grid(const DirectionGrid& grid,
                                     const std::function<double(const Vector&)>& h);

/// Integral of f over the affine subspace {p0 + C y : y in R^m} where the
/// columns of C are orthonormal and orthogonal to p0.  Polar decomposition:
/// subsphere grid on S^{m-1} times adaptive radial panels.
IntegralResult integrate_affine_subspace(const ScalarField& f, const Vector& p0,
                                         const Matrix& C,
                                         const QuadratureConfig& cfg);

/// Integral of f over the hyperplane {z : z . u = t}.
IntegralResult integrate_hyperplane(const ScalarField& f, const Vector& u,
                                    double t, const QuadratureConfig& cfg);

/// Total integral of f over R^n.  Product radial x sphere quadrature for
/// n <= 4; seeded importance sampling with a variance error estimate above.
IntegralResult integrate_space(const ScalarField& f, const QuadratureConfig& cfg);

/// Variant of integrate_space with an explicit truncation radius override.
IntegralResult integrate_space_truncated(const ScalarField& f, double radius,
                                         const QuadratureConfig& cfg);

/// Integral of f over the shell {r0 <= |x| <= r1} (divergence probes).
IntegralResult integrate_space_shell(const ScalarField& f, double r0, double r1,
                                     const QuadratureConfig& cfg);

} // namespace lcbp
