#pragma once

#include "core/types.hpp"

#include <functional>
#include <vector>

namespace lcbp {

/// Real orthonormal spherical harmonics on S^2 packed as coeff[l*l + l + m],
/// l = 0..lmax, m = -l..l.
struct SphericalHarmonicExpansion {
  int lmax = 0;
  std::vector<double> coeffs;

  static int pack(int l, int m) { return l * l + l + m; }
  double coeff(int l, int m) const { return coeffs[pack(l, m)]; }
  double& coeff(int l, int m) { return coeffs[pack(l, m)]; }

  double eval(const Vector& u) const;
  double eval_angles(double cos_theta, double phi) const;

  double even_energy() const; // sum of squared even-degree coefficients
  double odd_energy() const;
};

/// Fully normalized associated Legendre values P~_l^m(x) for all l <= lmax
/// at fixed m-sweep; fills column-major table[l][m].
void normalized_assoc_legendre(int lmax, double x, std::vector<double>& table);

struct SphereAnalysis {
  SphericalHarmonicExpansion expansion;
  double residual_l2 = 0.0; // relative rms misfit of the truncation on the grid
};

/// Projection of a function on S^2 onto harmonics up to lmax, via a
/// Gauss-Legendre x uniform-azimuth product grid (exact for band-limited
/// inputs within the grid's degree).
SphereAnalysis analyze_sphere_function(const std::function<double(const Vector&)>& g,
                                       int lmax, int theta_nodes = 0,
                                       int phi_nodes = 0);

/// Funk-Hecke multiplier of the spherical Radon transform on S^2:
/// R Y_l = 2 pi P_l(0) Y_l (zero for odd degrees).
double radon_multiplier_s2(int l);

/// Coefficient-space forward spherical Radon transform.
SphericalHarmonicExpansion radon_transform_expansion(const SphericalHarmonicExpansion& h);

struct RadonInverseResult {
  SphericalHarmonicExpansion preimage;
  double odd_energy_fraction = 0.0;
  double residual_l2 = 0.0; // truncation residual of the analyzed input
};

/// Inverse of the spherical Radon transform on S^2 for even inputs:
/// analyze, reject meaningful odd energy, divide by the even multipliers.
RadonInverseResult spherical_radon_inverse_n3(
    const std::function<double(const Vector&)>& g, int lmax, double odd_tol = 1e-6);

/// Direct great-subsphere integral of a function on S^{dim-1} over
/// S^{dim-1} cap u^perp.
double spherical_radon(int dim, const std::function<double(const Vector&)>& h,
                       const Vector& u, int nodes = 0);

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace lcbp
