#pragma once

#include "core/quadrature.hpp"

#include <optional>
#include <vector>

namespace lcbp {

/// Orthonormal frame for a k-dimensional subspace F together with a frame
/// for F^perp.  The combined n x n frame is orthonormal to 1e-12.
struct SubspaceFrame {
  int dim = 0;
  int k = 0;
  Matrix basis;      // n x k
  Matrix completion; // n x (n-k)

  /// Orthonormalizes the columns of B (must have full column rank) and
  /// completes them deterministically via Householder QR.
  static SubspaceFrame from_basis(const Matrix& B);

  /// max |Gram - I| entry of the full frame.
  double orthonormality_error() const;
};

/// J(f), the total mass.
IntegralResult total_mass(const ScalarField& f, const QuadratureConfig& cfg);

struct EntropyResult {
  double entropy = 0.0;
  double mass = 0.0;          // J(f)
  double f_log_f = 0.0;       // integral of f log f
  double mass_error = 0.0;
  double moment_error = 0.0;  // error of the f log f integral
  double error_estimate = 0.0;
  std::int64_t evals_used = 0;
  bool converged = false;
};

/// Ent(f) = integral f log f - J(f) log J(f).  The integrand is extended by
/// 0 where f is below the absolute tolerance.  Throws computation_error
/// ("degenerate mass") when J(f) is indistinguishable from 0.
EntropyResult entropy(const ScalarField& f, const QuadratureConfig& cfg);

/// Parallel section function A_{f,x/|x|}(t): integral of f over the
/// hyperplane {z . x/|x| = t}.
IntegralResult parallel_section(const ScalarField& f, const Vector& x, double t,
                                const QuadratureConfig& cfg);

/// Marginal pi_F(f)(x) with x given in the coordinates of the basis of F:
/// the integral of f over (basis * x) + F^perp.
IntegralResult marginal(const ScalarField& f, const SubspaceFrame& F,
                        const Vector& x_in_F, const QuadratureConfig& cfg);

/// Radon transform in direction x at offset r:
/// |x|^{-1} A_{f,x/|x|}(r / |x|).
IntegralResult radon(const ScalarField& f, const Vector& x, double r,
                     const QuadratureConfig& cfg);

struct DualMixedResult {
  double value = 0.0;
  bool is_infinite = false;
  double error_estimate = 0.0;
  std::int64_t evals_used = 0;
  bool converged = false;
};

/// Functional dual mixed volume via the integral form: integral of
/// psi e^{-phi} where f = e^{-phi}, g = e^{-psi}.  The value may be +inf;
/// divergence is detected by growing shell contributions under repeated
/// doubling of the truncation radius.
DualMixedResult dual_mixed(const ScalarField& f, const ScalarField& g,
                           const QuadratureConfig& cfg);

/// deltaJ(f, f) = -integral f log f (no potential needed).
IntegralResult dual_mixed_self(const ScalarField& f, const QuadratureConfig& cfg);

struct LimitDiagnostics {
  std::vector<double> t_ladder;
  std::vector<double> quotients;     // -(J_t - J_0) / t
  std::vector<double> extrapolants;  // Richardson-accelerated values
  bool monotone = true;              // J_t nonincreasing along the ladder
};

/// Functional dual mixed volume via the defining limit: finite-difference
/// quotients along a decreasing t ladder with Richardson extrapolation.
DualMixedResult dual_mixed_by_limit(const ScalarField& f, const ScalarField& g,
                                    const std::vector<double>& t_ladder,
                                    const QuadratureConfig& cfg,
                                    LimitDiagnostics* diagnostics = nullptr);

/// Upsilon(t) = log J(e^{-(1-t) phi - t psi}), convex on [0, 1].
double upsilon(const ScalarField& f, const ScalarField& g, double t,
               const QuadratureConfig& cfg);

} // namespace lcbp
