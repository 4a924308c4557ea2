#include "core/functionals.hpp"

#include <cmath>

namespace lcbp {

SubspaceFrame SubspaceFrame::from_basis(const Matrix& B) {
  const int n = static_cast<int>(B.rows());
  const int k = static_cast<int>(B.cols());
  if (k < 1 || k >= n) throw invalid_input("SubspaceFrame: need 1 <= k <= n-1");
  Eigen::HouseholderQR<Matrix> qr(B);
  Matrix Q = qr.householderQ();
  Matrix R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j)
    if (std::abs(R(j, j)) < 1e-10)
      throw invalid_input("SubspaceFrame: basis columns are rank deficient");
  SubspaceFrame F;
  F.dim = n;
  F.k = k;
  F.basis = Q.leftCols(k);
  F.completion = Q.rightCols(n - k);
  return F;
}

double SubspaceFrame::orthonormality_error() const {
  Matrix full(dim, dim);
  full << basis, completion;
  Matrix gram = full.transpose() * full;
  return (gram - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

IntegralResult total_mass(const ScalarField& f, const QuadratureConfig& cfg) {
  return integrate_space(f, cfg);
}

EntropyResult entropy(const ScalarField& f, const QuadratureConfig& cfg) {
  IntegralResult mass = integrate_space(f, cfg);
  if (!(mass.value > std::max(10.0 * mass.error_estimate, cfg.abs_tol)))
    throw computation_error("degenerate mass: J(f) is indistinguishable from zero");

  auto base = f.eval;
  const double floor = cfg.abs_tol;
  ScalarField flogf = f;
  // x log x -> 0 as x -> 0; cutting below the absolute tolerance avoids
  // -inf * 0 noise at the support boundary
  flogf.eval = [base, floor](const Vector& x) {
    const double v = base(x);
    return v > floor ? v * std::log(v) : 0.0;
  };
  flogf.sup_bound = std::max(1.0, f.sup_bound * std::abs(std::log(std::max(f.sup_bound, 1e-300))));
  IntegralResult moment = integrate_space(flogf, cfg);

  EntropyResult res;
  res.mass = mass.value;
  res.f_log_f = moment.value;
  res.mass_error = mass.error_estimate;
  res.moment_error = moment.error_estimate;
  res.entropy = moment.value - mass.value * std::log(mass.value);
  res.error_estimate = moment.error_estimate +
                       std::abs(std::log(mass.value) + 1.0) * mass.error_estimate;
  res.evals_used = mass.evals_used + moment.evals_used;
  res.converged = mass.converged && moment.converged;
  return res;
}

IntegralResult parallel_section(const ScalarField& f, const Vector& x, double t,
                                const QuadratureConfig& cfg) {
  if (!(x.norm() > 0.0)) throw invalid_input("parallel_section: direction must be nonzero");
  return integrate_hyperplane(f, x, t, cfg);
}

IntegralResult marginal(const ScalarField& f, const SubspaceFrame& F,
                        const Vector& x_in_F, const QuadratureConfig& cfg) {
  if (F.dim != f.dim) throw invalid_input("marginal: frame dimension mismatch");
  if (x_in_F.size() != F.k) throw invalid_input("marginal: point must have k coordinates");
  Vector p0 = F.basis * x_in_F;
  return integrate_affine_subspace(f, p0, F.completion, cfg);
}

IntegralResult radon(const ScalarField& f, const Vector& x, double r,
                     const QuadratureConfig& cfg) {
  const double norm = x.norm();
  if (!(norm > 0.0)) throw invalid_input("radon: direction must be nonzero");
  IntegralResult res = parallel_section(f, x, r / norm, cfg);
  res.value /= norm;
  res.error_estimate /= norm;
  return res;
}

namespace {

/// psi * e^{-phi} as a field-like integrand; 0 wherever f vanishes, +inf
/// when psi = +inf on positive mass.
ScalarField dual_mixed_integrand(const ScalarField& f, const ScalarField& g) {
  auto fe = f.eval;
  auto psi = potential_of(g).eval;
  ScalarField h = f;
  h.eval = [fe, psi](const Vector& x) {
    const double fv = fe(x);
    if (!(fv > 0.0)) return 0.0;
    const double pv = psi(x);
    if (std::isinf(pv)) return kInfinity;
    return pv * fv;
  };
  h.sup_bound = kInfinity; // not used by the engines below
  return h;
}

} // namespace

DualMixedResult dual_mixed(const ScalarField& f, const ScalarField& g,
                           const QuadratureConfig& cfg) {
  if (f.dim != g.dim) throw invalid_input("dual_mixed: dimension mismatch");
  ScalarField integrand = dual_mixed_integrand(f, g);
  const double R = std::max(f.support_radius, 1e-6);
  const double rel = cfg.resolved_rel_tol(f.dim);

  DualMixedResult res;
  IntegralResult base = integrate_space_truncated(integrand, R, cfg);
  res.evals_used = base.evals_used;
  if (!std::isfinite(base.value)) {
    res.is_infinite = true;
    res.value = kInfinity;
    return res;
  }

  // truncation-doubling probe: growing shell contributions mean +inf
  double total = base.value;
  double err = base.error_estimate;
  double prev_shell = 0.0;
  double last_shell = 0.0;
  bool growing = false;
  QuadratureConfig shell_cfg = cfg;
  shell_cfg.rel_tol = std::max(rel, 1e-4);
  for (int k = 1; k <= 3; ++k) {
    const double r0 = R * std::pow(2.0, k - 1);
    const double r1 = R * std::pow(2.0, k);
    IntegralResult shell_res = integrate_space_shell(integrand, r0, r1, shell_cfg);
    res.evals_used += shell_res.evals_used;
    const double shell = shell_res.value;
    if (!std::isfinite(shell)) {
      res.is_infinite = true;
      res.value = kInfinity;
      return res;
    }
    total += shell;
    err += shell_res.error_estimate;
    if (k > 1 && std::abs(shell) >= std::abs(prev_shell) &&
        std::abs(shell) > rel * std::max(std::abs(total), 1.0))
      growing = true;
    prev_shell = shell;
    last_shell = std::abs(shell);
  }
  if (growing) {
    res.is_infinite = true;
    res.value = kInfinity;
    return res;
  }
  res.value = total;
  res.error_estimate = err + last_shell; // unprobed tail proxy
  res.converged = base.converged;
  return res;
}

IntegralResult dual_mixed_self(const ScalarField& f, const QuadratureConfig& cfg) {
  auto base = f.eval;
  const double floor = cfg.abs_tol;
  ScalarField flogf = f;
  flogf.eval = [base, floor](const Vector& x) {
    const double v = base(x);
    return v > floor ? v * std::log(v) : 0.0;
  };
  IntegralResult res = integrate_space(flogf, cfg);
  res.value = -res.value;
  return res;
}

DualMixedResult dual_mixed_by_limit(const ScalarField& f, const ScalarField& g,
                                    const std::vector<double>& t_ladder,
                                    const QuadratureConfig& cfg,
                                    LimitDiagnostics* diagnostics) {
  if (f.dim != g.dim) throw invalid_input("dual_mixed_by_limit: dimension mismatch");
  std::vector<double> ladder = t_ladder;
  if (ladder.empty()) ladder = {1e-1, 1e-2, 1e-3, 1e-4};
  for (size_t i = 0; i + 1 < ladder.size(); ++i)
    if (!(ladder[i] > ladder[i + 1]) || !(ladder[i + 1] > 0.0))
      throw invalid_input("dual_mixed_by_limit: ladder must be positive decreasing");

  IntegralResult J0 = integrate_space(f, cfg);
  DualMixedResult res;
  res.evals_used = J0.evals_used;

  LimitDiagnostics local;
  local.t_ladder = ladder;
  double prev_Jt = J0.value;
  for (double t : ladder) {
    ScalarField ft = harmonic_combination_field(f, g, t);
    IntegralResult Jt = integrate_space(ft, cfg);
    res.evals_used += Jt.evals_used;
    local.quotients.push_back(-(Jt.value - J0.value) / t);
    if (Jt.value > prev_Jt + 10.0 * (Jt.error_estimate + J0.error_estimate))
      local.monotone = false;
    prev_Jt = Jt.value;
  }
  // Richardson step for a first-order ladder: D(t) = D* + c t + O(t^2)
  for (size_t i = 0; i + 1 < local.quotients.size(); ++i) {
    const double r = ladder[i] / ladder[i + 1];
    local.extrapolants.push_back(
        (r * local.quotients[i + 1] - local.quotients[i]) / (r - 1.0));
  }
  const double value = local.extrapolants.empty() ? local.quotients.back()
                                                  : local.extrapolants.back();
  res.value = value;
  res.error_estimate = std::abs(value - local.quotients.back()) +
                       J0.error_estimate / ladder.back();
  res.converged = local.monotone;
  if (!local.monotone) res.is_infinite = false; // evidence only; caller decides
  if (diagnostics) *diagnostics = local;
  return res;
}

double upsilon(const ScalarField& f, const ScalarField& g, double t,
               const QuadratureConfig& cfg) {
  if (f.dim != g.dim) throw invalid_input("upsilon: dimension mismatch");
  if (t < 0.0 || t > 1.0) throw invalid_input("upsilon: t must lie in [0, 1]");
  const double radius = std::max(f.support_radius, g.support_radius);
  if (t == 0.0) return std::log(integrate_space(f, cfg).value);
  if (t == 1.0) return std::log(integrate_space_truncated(g, radius, cfg).value);
  ConvexPotential phi = potential_of(f);
  ConvexPotential psi = potential_of(g);
  auto pe = phi.eval;
  auto qe = psi.eval;
  ConvexPotential mix;
  mix.dim = f.dim;
  mix.eval = [pe, qe, t](const Vector& x) {
    const double a = pe(x);
    const double b = qe(x);
    if (std::isinf(a) || std::isinf(b)) return kInfinity;
    return (1.0 - t) * a + t * b;
  };
  mix.inf_value = (1.0 - t) * phi.inf_value + t * psi.inf_value;
  mix.is_even = phi.is_even && psi.is_even;
  mix.is_convex = phi.is_convex && psi.is_convex;
  ScalarField ft = field_of(mix, radius);
  return std::log(integrate_space(ft, cfg).value);
}

} // namespace lcbp
