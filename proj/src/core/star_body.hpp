#pragma once

#include "core/types.hpp"

#include <functional>
#include <vector>

namespace lcbp {

/// Star body about the origin, represented by a positive continuous radial
/// oracle on the unit sphere.  Bodies are immutable after construction and
/// safe to evaluate concurrently.
struct StarBody {
  int dim = 0;
  std::function<double(const Vector&)> radial; // rho(u) for unit u
  bool is_even = true;   // origin symmetry, caller claim
  bool is_convex = false; // caller claim, consumed by field constructors
  double rho_min = 0.0;  // cached positive bounds
  double rho_max = 0.0;

  /// Radial function extended by (-1)-homogeneity to nonzero x.
  double radial_at(const Vector& x) const;
};

StarBody make_ball(int dim, double radius = 1.0);

/// Ellipsoid {x : x^T A x <= 1}; rho(u) = (u^T A u)^{-1/2}.
StarBody make_ellipsoid_from_matrix(const Matrix& A);

/// Axis-aligned ellipsoid with the given semi-axes.
StarBody make_ellipsoid(const std::vector<double>& semi_axes);

/// Cube [-h, h]^n; rho(u) = h / max_j |u_j|.
StarBody make_cube(int dim, double half_width = 0.5);

/// Planar star body interpolating (angle, rho) samples piecewise-linearly
/// in the angle.  Angles need not be sorted; values must be positive.
StarBody make_radial_table_2d(const std::vector<double>& angles,
                              const std::vector<double>& values);

/// Rotational body in R^3 with rho(u) = sum_l coeffs[l] * P_l(u_z).
/// The series must stay positive on [-1, 1] (checked on a fine grid).
StarBody make_zonal_body(const std::vector<double>& legendre_coeffs);

/// Image T(K) of a star body under an invertible linear map;
/// rho_{TK}(u) = 1 / ||T^{-1} u||_K-ish via rho_{TK}(x) = rho_K(T^{-1} x).
StarBody linear_image(const StarBody& K, const Matrix& T);

/// Minkowski functional ||x||_K = ||x|| / rho_K(x/||x||), 0 at the origin.
double minkowski_norm(const StarBody& K, const Vector& x);

/// Harmonic p-combination: radial^{-p} = s * rho_K^{-p} + t * rho_L^{-p}.
StarBody harmonic_p_combination(const StarBody& K, const StarBody& L,
                                double s, double t, double p);

/// Dilate a * K.
StarBody dilate(const StarBody& K, double a);

/// Legendre polynomial P_l(x) (used by zonal bodies and the S^2 Radon
/// transform multipliers).
double legendre_p(int l, double x);

} // namespace lcbp
