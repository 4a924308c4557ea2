#include "core/geometry.hpp"

#include <cmath>

namespace lcbp {

IntegralResult volume(const StarBody& K, const QuadratureConfig& cfg) {
  const int n = K.dim;
  auto rho = K.radial;
  IntegralResult res = integrate_sphere(
      n, [rho, n](const Vector& u) { return std::pow(rho(u), n); }, cfg);
  res.value /= n;
  res.error_estimate /= n;
  return res;
}

IntegralResult central_section_volume(const StarBody& K, const Vector& u,
                                      const QuadratureConfig& cfg) {
  const int n = K.dim;
  if (n < 2) throw invalid_input("central_section_volume: requires n >= 2");
  if (u.size() != n) throw invalid_input("central_section_volume: dimension mismatch");
  const double norm = u.norm();
  if (!(norm > 0.0)) throw invalid_input("central_section_volume: zero direction");
  Matrix C = orthonormal_completion(u / norm);
  auto rho = K.radial;

  const int m = n - 1; // dimension of the subsphere's ambient space
  DirectionGrid grid = DirectionGrid::make(m, cfg.resolved_subsphere_points(m), cfg.seed);
  double even = 0.0, odd = 0.0;
  for (int i = 0; i < grid.count(); ++i) {
    Vector v = C * grid.nodes.col(i);
    const double term = grid.weights[i] * std::pow(rho(v), n - 1);
    if (i % 2 == 0) even += term;
    else odd += term;
  }
  IntegralResult res;
  res.value = (even + odd) / (n - 1);
  res.error_estimate = std::abs(2.0 * even - 2.0 * odd) * 0.5 / (n - 1);
  res.evals_used = grid.count();
  res.converged = true;
  return res;
}

IntegralResult dual_mixed_volume(const StarBody& K, const StarBody& L, double p,
                                 const QuadratureConfig& cfg) {
  if (K.dim != L.dim) throw invalid_input("dual_mixed_volume: dimension mismatch");
  if (!(p >= 1.0)) throw invalid_input("dual_mixed_volume: requires p >= 1");
  const int n = K.dim;
  auto rk = K.radial;
  auto rl = L.radial;
  IntegralResult res = integrate_sphere(
      n,
      [rk, rl, n, p](const Vector& u) {
        return std::pow(rk(u), n + p) * std::pow(rl(u), -p);
      },
      cfg);
  res.value /= n;
  res.error_estimate /= n;
  return res;
}

} // namespace lcbp
