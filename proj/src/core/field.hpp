#pragma once

#include "core/star_body.hpp"
#include "core/types.hpp"

#include <functional>
#include <random>

namespace lcbp {

/// Evaluation oracle for a nonnegative function on R^n with caller-supplied
/// metadata claims.  Fields are immutable value-like objects; the claims are
/// checked by sampling (validate_field), not proven.
struct ScalarField {
  int dim = 0;
  std::function<double(const Vector&)> eval;
  bool is_even = false;
  bool is_log_concave = false;
  /// The field is numerically negligible (below the truncation tolerance)
  /// outside the ball of this radius.
  double support_radius = 0.0;
  double sup_bound = 0.0;
  double value_at_origin = 0.0;
  /// Potential phi with f = e^{-phi}, extended-real valued (IEEE +inf marks
  /// points outside dom(phi); never a large finite sentinel).  Set
  /// analytically by the constructors below; fall back to -log(eval).
  std::function<double(const Vector&)> potential;
  /// inf of the potential (= -log sup_bound when derived).
  double potential_inf = 0.0;

  double operator()(const Vector& x) const { return eval(x); }
};

/// Extended-real convex potential oracle (class L of integrable log-concave
/// fields when coercive).
struct ConvexPotential {
  int dim = 0;
  std::function<double(const Vector&)> eval;
  double dom_radius = kInfinity; // radius within which the potential is finite
  bool is_even = false;
  bool is_convex = false;
  double inf_value = 0.0;

  double operator()(const Vector& x) const { return eval(x); }
};

/// Truncation tolerance used to derive support radii from decay rates.
inline constexpr double kTruncationTol = 1e-12;

/// x |-> exp(-|x|^2 / (2 sigma^2)).
ScalarField make_gaussian(int dim, double sigma);

/// Gaussian with center shift and diagonal sigmas: exp(-sum (x_i-c_i)^2/(2 s_i^2)).
ScalarField make_gaussian_diag(const Vector& center, const Vector& sigmas);

/// x |-> exp(-c ||x||_K^p), p >= 1, c > 0.  Flagged log-concave only when
/// the body is convex (caller claim on K).
ScalarField make_exp_body_norm(const StarBody& K, double p, double c);

/// Characteristic function of a star body.
ScalarField make_characteristic(const StarBody& K);

/// x |-> f(T x) for invertible T (condition-number guarded).
ScalarField compose_linear(const ScalarField& f, const Matrix& T);

/// a * f for a > 0.
ScalarField scale_field(const ScalarField& f, double a);

/// Pointwise product of fields (log-concave class is closed under products).
ScalarField product_field(const ScalarField& f, const ScalarField& g);

/// Even part (f(x) + f(-x)) / 2; equals f when f is even.
ScalarField dual_difference(const ScalarField& f);

/// phi + c.
ConvexPotential shift_potential(const ConvexPotential& phi, double c);

/// Harmonic combination of potentials: phi + t psi (t > 0).
ConvexPotential harmonic_combination(const ConvexPotential& phi,
                                     const ConvexPotential& psi, double t);

/// The potential of a field: the analytic one when the constructor set it,
/// otherwise -log f.
ConvexPotential potential_of(const ScalarField& f);

/// e^{-phi} wrapped into a field; support radius from a decay scan along
/// seeded rays when no analytic radius is available.
ScalarField field_of(const ConvexPotential& phi, double support_radius);

/// e^{-(phi + t psi)} where phi, psi are the potentials of f and g;
/// the harmonic-combination field used by the dual mixed volume limit.
ScalarField harmonic_combination_field(const ScalarField& f,
                                       const ScalarField& g, double t);

/// Sampling check of the metadata claims (evenness, midpoint log-concavity,
/// sup bound, value at origin).  Throws computation_error naming the first
/// violated claim.  Points are drawn inside the support ball.
void validate_field(const ScalarField& f, int samples, std::uint64_t seed);

/// True if f(x) = f(-x) holds on `samples` seeded points (no throw).
bool sampled_even(const ScalarField& f, int samples, std::uint64_t seed);

} // namespace lcbp
