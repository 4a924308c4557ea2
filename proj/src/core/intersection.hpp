#pragma once

#include "core/functionals.hpp"
#include "core/geometry.hpp"
#include "core/sphere_harmonics.hpp"

namespace lcbp {

/// Intersection function If(x) = exp(-|x| / A_{f,x/|x|}(0)), If(0) = 1.
/// Returns 0 when the central section mass is below the noise floor
/// (the exponent diverges; 0 is the continuous extension).
double intersection_function(const ScalarField& f, const Vector& x,
                             const QuadratureConfig& cfg);

/// If as a field with a per-direction cache of central section values.
/// Rays re-query the same direction heavily, so the cache makes total-mass
/// integrals of If tractable.
ScalarField make_intersection_field(const ScalarField& f, const QuadratureConfig& cfg);

/// Ball's body K_p(f): radial(u) = ((p / f(0)) Int_0^inf r^{p-1} f(ru) dr)^{1/p}.
/// Radial values are memoized per direction.  Requires f(0) > 0.
StarBody ball_body(const ScalarField& f, double p, const QuadratureConfig& cfg);

/// Intersection body IK: radial(u) = V_{n-1}(K cap u^perp), memoized.
StarBody intersection_body(const StarBody& K, const QuadratureConfig& cfg);

/// Composite route If(x) = exp(-||x||_{I K_{n-1}(f)} / f(0)); must agree
/// with the direct route (route equivalence is a library invariant).
ScalarField make_if_via_ball_body_field(const ScalarField& f,
                                        const QuadratureConfig& cfg);
double if_via_ball_body(const ScalarField& f, const Vector& x,
                        const QuadratureConfig& cfg);

struct GlCheckResult {
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Vector worst_point;
};

/// GL(n) equivariance of the intersection function:
/// I(f o T) = (I f) o (|det T| T^{-t}), checked pointwise on sample_points.
GlCheckResult gl_transform_check(const ScalarField& f, const Matrix& T,
                                 const std::vector<Vector>& sample_points,
                                 const QuadratureConfig& cfg,
                                 double tolerance = 5e-3);

struct MembershipResult {
  enum class Verdict { yes, no, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  double min_preimage = 0.0;       // minimum of the reconstructed preimage
  double min_relative = 0.0;       // normalized by the preimage mean
  double odd_energy_fraction = 0.0;
  double residual_l2 = 0.0;
  SphericalHarmonicExpansion rho_expansion; // harmonics of rho_{K_2(f)}
  SphericalHarmonicExpansion preimage;
};

/// Membership test in R^3: f is an intersection function iff K_2(f) is an
/// intersection body, certified by the sign of the spherical Radon
/// pre-image of rho_{K_2(f)}.  "inconclusive" when the minimum lies within
/// +-tol of zero (relative to the preimage mean).
MembershipResult is_intersection_function_n3(const ScalarField& f, int lmax,
                                             double tol,
                                             const QuadratureConfig& cfg);

const char* to_string(MembershipResult::Verdict v);

} // namespace lcbp
