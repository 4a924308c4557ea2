#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <vector>

namespace lcbp {

namespace {

// G7/K15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
  double value;
  double error;
};

PanelResult gk15(const std::function<double(double)>& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = g(center - half * kKronrodNodes[i]);
    fv[14 - i] = g(center + half * kKronrodNodes[i]);
  }
  fv[7] = g(center);
  double kron = 0.0;
  for (int i = 0; i < 7; ++i) kron += kKronrodWeights[i] * (fv[i] + fv[14 - i]);
  kron += kKronrodWeights[7] * fv[7];
  kron *= half;
  double gauss = kGaussWeights[3] * fv[7];
  for (int i = 0; i < 3; ++i) gauss += kGaussWeights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  gauss *= half;
  const double diff = std::abs(kron - gauss);
  // QUADPACK-style sharpened estimate
  const double err = diff * std::min(1.0, std::pow(200.0 * diff / std::max(std::abs(kron), 1e-300), 1.5)) + diff * 1e-14;
  return {kron, std::max(err, std::abs(kron) * 1e-15)};
}

struct Segment {
  double a, b, value, error;
  std::int64_t order;
};

struct SegmentLess {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.order > y.order; // older first on ties, for determinism
  }
};

} // namespace

double QuadratureConfig::resolved_rel_tol(int dim) const {
  if (rel_tol > 0.0) return rel_tol;
  if (dim <= 3) return 1e-6;
  if (dim == 4) return 1e-4;
  return 1e-3;
}

int QuadratureConfig::resolved_sphere_points(int dim) const {
  return sphere_points > 0 ? sphere_points : default_sphere_count(dim);
}

int QuadratureConfig::resolved_subsphere_points(int dim) const {
  return subsphere_points > 0 ? subsphere_points : default_sphere_count(dim);
}

void QuadratureConfig::validate() const {
  if (rel_tol < 0.0 || abs_tol <= 0.0)
    throw invalid_input("QuadratureConfig: tolerances must be positive");
  if (max_evals <= 0) throw invalid_input("QuadratureConfig: budget must be positive");
}

IntegralResult integrate_interval(const std::function<double(double)>& g,
                                  double a, double b,
                                  double rel_tol, double abs_tol,
                                  std::int64_t max_evals) {
  IntegralResult res;
  if (!(b > a)) {
    res.converged = true;
    return res;
  }
  std::priority_queue<Segment, std::vector<Segment>, SegmentLess> queue;
  std::int64_t order = 0;
  PanelResult first = gk15(g, a, b);
  res.evals_used = 15;
  double total = first.value;
  double total_err = first.error;
  queue.push({a, b, first.value, first.error, order++});

  while (total_err > std::max(rel_tol * std::abs(total), abs_tol) &&
         res.evals_used + 30 <= max_evals && queue.size() < 200000) {
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // panel width exhausted (machine precision): accept as is
      queue.push({worst.a, worst.b, worst.value, 0.0, order++});
      total_err -= worst.error;
      continue;
    }
    PanelResult left = gk15(g, worst.a, mid);
    PanelResult right = gk15(g, mid, worst.b);
    res.evals_used += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push({worst.a, mid, left.value, left.error, order++});
    queue.push({mid, worst.b, right.value, right.error, order++});
  }
  res.value = total;
  res.error_estimate = total_err;
  res.converged = total_err <= std::max(rel_tol * std::abs(total), abs_tol);
  return res;
}

IntegralResult integrate_radial(const std::function<double(double)>& g,
                                double radius, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(radius > 0.0)) throw invalid_input("integrate_radial: radius must be positive");
  return integrate_interval(g, 0.0, radius, cfg.resolved_rel_tol(1), cfg.abs_tol,
                            cfg.max_evals);
}

IntegralResult integrate_sphere_grid(const DirectionGrid& grid,
                                     const std::function<double(const Vector&)>& h) {
  IntegralResult res;
  double even = 0.0, odd = 0.0;
  const int n = grid.count();
  for (int i = 0; i < n; ++i) {
    const double term = grid.weights[i] * h(grid.nodes.col(i));
    if (i % 2 == 0) even += term;
    else odd += term;
  }
  res.value = even + odd;
  // interleave estimate: both halves are valid half-resolution rules
  res.error_estimate = (n > 1) ? std::abs(2.0 * even - 2.0 * odd) * 0.5 : 0.0;
  res.evals_used = n;
  res.converged = true;
  return res;
}

IntegralResult integrate_sphere(int dim,
                                const std::function<double(const Vector&)>& h,
                                const QuadratureConfig& cfg) {
  cfg.validate();
  DirectionGrid grid = DirectionGrid::make(dim, cfg.resolved_sphere_points(dim), cfg.seed);
  IntegralResult res = integrate_sphere_grid(grid, h);
  res.converged = res.error_estimate <=
                  std::max(cfg.resolved_rel_tol(dim) * std::abs(res.value), cfg.abs_tol);
  return res;
}

IntegralResult integrate_affine_subspace(const ScalarField& f, const Vector& p0,
                                         const Matrix& C,
                                         const QuadratureConfig& cfg) {
  cfg.validate();
  const int n = f.dim;
  const int m = static_cast<int>(C.cols());
  if (C.rows() != n || p0.size() != n)
    throw invalid_input("integrate_affine_subspace: dimension mismatch");
  const double rel = cfg.resolved_rel_tol(n);

  // points p0 + s v with v in span(C) have |p0 + s v|^2 = |p0|^2 + s^2
  const double off2 = p0.squaredNorm();
  const double R2 = f.support_radius * f.support_radius;
  IntegralResult res;
  if (off2 >= R2) {
    res.converged = true;
    return res;
  }
  const double s_max = std::sqrt(R2 - off2);

  if (m == 1) {
    Vector dir = C.col(0);
    Vector buf(n);
    auto g = [&f, &p0, &dir, buf](double s) mutable {
      buf = p0 + s * dir;
      return f.eval(buf);
    };
    IntegralResult line = integrate_interval(g, -s_max, s_max, rel, cfg.abs_tol, cfg.max_evals);
    return line;
  }

  DirectionGrid grid = DirectionGrid::make(m, cfg.resolved_subsphere_points(m), cfg.seed);
  double even = 0.0, odd = 0.0, radial_err = 0.0;
  std::int64_t evals = 0;
  bool all_converged = true;
  const double node_abs = cfg.abs_tol / grid.count();
  for (int i = 0; i < grid.count(); ++i) {
    Vector v = C * grid.nodes.col(i); // unit vector in the subspace
    Vector buf(n);
    auto g = [&f, &p0, &v, buf, m](double r) mutable {
      buf = p0 + r * v;
      return f.eval(buf) * std::pow(r, m - 1);
    };
    IntegralResult ray = integrate_interval(g, 0.0, s_max, rel, node_abs,
                                            cfg.max_evals - evals);
    evals += ray.evals_used;
    radial_err += grid.weights[i] * ray.error_estimate;
    all_converged = all_converged && ray.converged;
    const double term = grid.weights[i] * ray.value;
    if (i % 2 == 0) even += term;
    else odd += term;
    if (evals >= cfg.max_evals) {
      all_converged = false;
      break;
    }
  }
  res.value = even + odd;
  res.error_estimate = std::abs(2.0 * even - 2.0 * odd) * 0.5 + radial_err;
  res.evals_used = evals;
  res.converged = all_converged;
  return res;
}

IntegralResult integrate_hyperplane(const ScalarField& f, const Vector& u,
                                    double t, const QuadratureConfig& cfg) {
  if (u.size() != f.dim) throw invalid_input("integrate_hyperplane: dimension mismatch");
  if (f.dim < 2) throw invalid_input("integrate_hyperplane: requires n >= 2");
  const double norm = u.norm();
  if (!(norm > 0.0)) throw invalid_input("integrate_hyperplane: zero direction");
  Vector uhat = u / norm;
  Vector p0 = t * uhat;
  Matrix C = orthonormal_completion(uhat);
  return integrate_affine_subspace(f, p0, C, cfg);
}

IntegralResult integrate_space_truncated(const ScalarField& f, double radius,
                                         const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(radius > 0.0)) throw invalid_input("integrate_space: radius must be positive");
  const int n = f.dim;
  const double rel = cfg.resolved_rel_tol(n);
  IntegralResult res;

  if (n == 1) {
    Vector buf(1);
    auto g = [&f, buf](double x) mutable {
      buf[0] = x;
      return f.eval(buf);
    };
    return integrate_interval(g, -radius, radius, rel, cfg.abs_tol, cfg.max_evals);
  }

  if (n <= 4) {
    DirectionGrid grid = DirectionGrid::make(n, cfg.resolved_sphere_points(n), cfg.seed);
    double even = 0.0, odd = 0.0, radial_err = 0.0;
    std::int64_t evals = 0;
    bool all_converged = true;
    const double node_abs = cfg.abs_tol / grid.count();
    for (int i = 0; i < grid.count(); ++i) {
      Vector u = grid.nodes.col(i);
      Vector buf(n);
      auto g = [&f, &u, buf, n](double r) mutable {
        buf = r * u;
        return f.eval(buf) * std::pow(r, n - 1);
      };
      IntegralResult ray = integrate_interval(g, 0.0, radius, rel, node_abs,
                                              cfg.max_evals - evals);
      evals += ray.evals_used;
      radial_err += grid.weights[i] * ray.error_estimate;
      all_converged = all_converged && ray.converged;
      const double term = grid.weights[i] * ray.value;
      if (i % 2 == 0) even += term;
      else odd += term;
      if (evals >= cfg.max_evals) {
        all_converged = false;
        break;
      }
    }
    res.value = even + odd;
    res.error_estimate = std::abs(2.0 * even - 2.0 * odd) * 0.5 + radial_err;
    res.evals_used = evals;
    res.converged = all_converged;
    return res;
  }

  // High dimensions: seeded importance sampling, r ~ r^{n-1} on [0, radius],
  // u uniform on the sphere.  Deterministic for a fixed seed.
  std::mt19937_64 rng(split_seed(cfg.seed, 0x5bacefeedULL));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::int64_t samples =
      std::min<std::int64_t>(cfg.mc_points, std::max<std::int64_t>(1, cfg.max_evals));
  const double envelope = sphere_surface_area(n) * std::pow(radius, n) / n;
  double sum = 0.0, sum2 = 0.0;
  Vector x(n);
  for (std::int64_t i = 0; i < samples; ++i) {
    double norm2 = 0.0;
    do {
      for (int j = 0; j < n; ++j) x[j] = gauss(rng);
      norm2 = x.squaredNorm();
    } while (norm2 < 1e-12);
    const double r = radius * std::pow(unif(rng), 1.0 / n);
    x *= r / std::sqrt(norm2);
    const double v = f.eval(x);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, sum2 / samples - mean * mean);
  res.value = envelope * mean;
  res.error_estimate = envelope * std::sqrt(var / samples);
  res.evals_used = samples;
  res.converged = res.error_estimate <= std::max(rel * std::abs(res.value), cfg.abs_tol);
  return res;
}

IntegralResult integrate_space_shell(const ScalarField& f, double r0, double r1,
                                     const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(r1 > r0) || r0 < 0.0) throw invalid_input("integrate_space_shell: bad radii");
  const int n = f.dim;
  const double rel = cfg.resolved_rel_tol(n);
  IntegralResult res;

  if (n == 1) {
    Vector buf(1);
    auto g = [&f, buf](double x) mutable {
      buf[0] = x;
      return f.eval(buf);
    };
    IntegralResult pos = integrate_interval(g, r0, r1, rel, cfg.abs_tol, cfg.max_evals);
    IntegralResult neg = integrate_interval(g, -r1, -r0, rel, cfg.abs_tol, cfg.max_evals);
    res.value = pos.value + neg.value;
    res.error_estimate = pos.error_estimate + neg.error_estimate;
    res.evals_used = pos.evals_used + neg.evals_used;
    res.converged = pos.converged && neg.converged;
    return res;
  }

  if (n <= 4) {
    DirectionGrid grid = DirectionGrid::make(n, cfg.resolved_sphere_points(n), cfg.seed);
    double even = 0.0, odd = 0.0, radial_err = 0.0;
    std::int64_t evals = 0;
    bool all_converged = true;
    const double node_abs = cfg.abs_tol / grid.count();
    for (int i = 0; i < grid.count(); ++i) {
      Vector u = grid.nodes.col(i);
      Vector buf(n);
      auto g = [&f, &u, buf, n](double r) mutable {
        buf = r * u;
        return f.eval(buf) * std::pow(r, n - 1);
      };
      IntegralResult ray = integrate_interval(g, r0, r1, rel, node_abs,
                                              cfg.max_evals - evals);
      evals += ray.evals_used;
      radial_err += grid.weights[i] * ray.error_estimate;
      all_converged = all_converged && ray.converged;
      const double term = grid.weights[i] * ray.value;
      if (i % 2 == 0) even += term;
      else odd += term;
      if (evals >= cfg.max_evals) {
        all_converged = false;
        break;
      }
    }
    res.value = even + odd;
    res.error_estimate = std::abs(2.0 * even - 2.0 * odd) * 0.5 + radial_err;
    res.evals_used = evals;
    res.converged = all_converged;
    return res;
  }

  std::mt19937_64 rng(split_seed(cfg.seed, 0x5e11feedULL));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::int64_t samples =
      std::min<std::int64_t>(cfg.mc_points, std::max<std::int64_t>(1, cfg.max_evals));
  const double vol_n = std::pow(r1, n) - std::pow(r0, n);
  const double envelope = sphere_surface_area(n) * vol_n / n;
  double sum = 0.0, sum2 = 0.0;
  Vector x(n);
  for (std::int64_t i = 0; i < samples; ++i) {
    double norm2 = 0.0;
    do {
      for (int j = 0; j < n; ++j) x[j] = gauss(rng);
      norm2 = x.squaredNorm();
    } while (norm2 < 1e-12);
    const double r = std::pow(std::pow(r0, n) + unif(rng) * vol_n, 1.0 / n);
    x *= r / std::sqrt(norm2);
    const double v = f.eval(x);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, sum2 / samples - mean * mean);
  res.value = envelope * mean;
  res.error_estimate = envelope * std::sqrt(var / samples);
  res.evals_used = samples;
  res.converged = res.error_estimate <= std::max(rel * std::abs(res.value), cfg.abs_tol);
  return res;
}

IntegralResult integrate_space(const ScalarField& f, const QuadratureConfig& cfg) {
  return integrate_space_truncated(f, f.support_radius, cfg);
}

} // namespace lcbp
