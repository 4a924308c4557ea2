#include "core/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lcbp {

namespace {
constexpr double kPi = std::numbers::pi;
using ordered_json = nlohmann::ordered_json;
} // namespace

InequalityReport make_report(const std::string& name, double lhs, double rhs,
                             double tolerance, bool equality_expected,
                             const std::string& details) {
  InequalityReport r;
  r.name = name;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tolerance;
  r.pass = r.margin >= -tolerance;
  r.equality_expected = equality_expected;
  r.details = details;
  return r;
}

BPVerdict bp_check(const ScalarField& f, const ScalarField& g,
                   const DirectionGrid& grid, const QuadratureConfig& cfg) {
  if (f.dim != g.dim || grid.dim != f.dim)
    throw invalid_input("bp_check: dimension mismatch");
  if (!f.is_even || !g.is_even || !sampled_even(f, 64, cfg.seed) ||
      !sampled_even(g, 64, cfg.seed))
    throw computation_error(
        "bp_check: inputs must be even (symmetrizing a non-even input raises "
        "every central section while raising the self dual mixed volume, so "
        "the conclusions can reverse)");

  BPVerdict v;
  v.dim = f.dim;
  v.worst_direction = grid.nodes.col(0);

  double worst = kInfinity;
  double worst_tol = 0.0;
  bool dominated = true;
  for (int i = 0; i < grid.count(); ++i) {
    Vector u = grid.nodes.col(i);
    IntegralResult Af = parallel_section(f, u, 0.0, cfg);
    IntegralResult Ag = parallel_section(g, u, 0.0, cfg);
    const double gap = Ag.value - Af.value;
    const double tol = 5.0 * (Af.error_estimate + Ag.error_estimate);
    if (gap < worst) {
      worst = gap;
      worst_tol = tol;
      v.worst_direction = u;
    }
    if (gap < -tol) dominated = false;
  }
  v.domination = dominated;
  v.worst_section_margin = worst;

  EntropyResult ef = entropy(f, cfg);
  EntropyResult eg = entropy(g, cfg);
  v.mass_f = ef.mass;
  v.mass_g = eg.mass;
  v.selfdual_f = -ef.f_log_f;
  v.selfdual_g = -eg.f_log_f;
  v.rescale = std::max(1.0 / ef.mass, 1.0 / eg.mass);
  v.entropy_f_scaled = v.rescale * ef.entropy;
  v.entropy_g_scaled = v.rescale * eg.entropy;

  const double mass_tol = 5.0 * (ef.mass_error + eg.mass_error);
  const double sd_tol = 5.0 * (ef.moment_error + eg.moment_error);
  const double ent_tol = 5.0 * v.rescale * (ef.error_estimate + eg.error_estimate);
  v.tolerance = std::max({mass_tol, sd_tol, ent_tol, worst_tol});

  v.mass_ordered = ef.mass <= eg.mass + mass_tol;
  v.selfdual_ordered = v.selfdual_f <= v.selfdual_g + sd_tol;
  v.entropy_ordered = v.entropy_f_scaled >= v.entropy_g_scaled - ent_tol;

  if (v.dim >= 2 && v.dim <= 4)
    v.consistent_with_theorem =
        !(v.domination && !(v.mass_ordered && v.selfdual_ordered && v.entropy_ordered));
  else
    v.consistent_with_theorem = true;
  return v;
}

ClosedFormRecord closed_form_oracle(const StarBody& K, double a,
                                    const QuadratureConfig& cfg) {
  if (!(a > 0.0)) throw invalid_input("closed_form_oracle: requires a > 0");
  const int n = K.dim;
  const double VK = volume(K, cfg).value;
  const double gamma_n1 = std::tgamma(n + 1.0);
  ClosedFormRecord rec;
  rec.mass = std::pow(a, n) * gamma_n1 * VK;
  rec.selfdual = n * rec.mass;
  rec.entropy = -rec.mass * (n + std::log(gamma_n1) + std::log(std::pow(a, n) * VK));
  StarBody body = K;
  QuadratureConfig c = cfg;
  rec.section = [body, a, n, c](const Vector& u) {
    return std::pow(a, n - 1) * std::tgamma(static_cast<double>(n)) *
           central_section_volume(body, u, c).value;
  };
  return rec;
}

double cube_central_section(const Vector& u) {
  const double norm = u.norm();
  if (!(norm > 0.0)) throw invalid_input("cube_central_section: zero direction");
  std::vector<double> freq; // |u_j| / 2 for the active components
  for (int j = 0; j < u.size(); ++j) {
    const double a = std::abs(u[j]) / norm * 0.5;
    if (a > 1e-13) freq.push_back(a);
  }
  if (freq.size() <= 1) return 1.0; // axis direction: unit (n-1)-cube
  std::sort(freq.begin(), freq.end(), std::greater<double>());
  double freq_sum = 0.0;
  for (double a : freq) freq_sum += a;

  auto integrand = [&freq](double s) {
    double p = 1.0;
    for (double a : freq) {
      const double x = a * s;
      p *= (x < 1e-8) ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    }
    return p;
  };
  auto envelope = [&freq](double s) {
    double p = 1.0;
    for (double a : freq) p *= std::min(1.0, 1.0 / (a * s));
    return p;
  };

  // cutoff: the remainder of the oscillatory tail is within one lobe's
  // absolute area, ~ envelope(S) * half-period
  const double half_period = kPi / freq_sum;
  double S = 4.0 / freq[1];
  while (envelope(S) * half_period > 1e-7 && S < 4.0e6) S *= 2.0;

  double width = 0.5 * half_period;
  double panels = std::ceil(S / width);
  if (panels > 300000) { // near-axis guard; accuracy stays ~1e-4
    panels = 300000;
    width = S / panels;
  }
  double acc = 0.0;
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(panels); ++k) {
    const double a0 = k * width;
    const double b0 = std::min(S, a0 + width);
    acc += integrate_interval(integrand, a0, b0, 1e-12, 1e-14, 1000).value;
    if (b0 >= S) break;
  }
  return acc / kPi;
}

CubeBallResult bp_counterexample_cube_ball(int dim, int directions,
                                           const QuadratureConfig& cfg) {
  if (dim < 10)
    throw invalid_input("bp_counterexample_cube_ball: construction valid only for n >= 10");
  if (directions < 1) throw invalid_input("bp_counterexample_cube_ball: need directions");

  CubeBallResult out;
  const double target = std::numbers::sqrt2;
  // omega_{n-1} r^{n-1} = sqrt(2)
  out.ball_radius = std::pow(target / unit_ball_volume(dim - 1), 1.0 / (dim - 1));
  StarBody L = make_ball(dim, out.ball_radius);
  IntegralResult VL = volume(L, cfg);
  out.ball_volume = VL.value;
  out.ball_volume_error = std::max(VL.error_estimate, 1e-13 * VL.value);

  DirectionGrid grid = DirectionGrid::make(dim, directions, cfg.seed);
  out.directions = grid.count() + 2;

  double worst = -kInfinity;
  Vector worst_dir = Vector::Unit(dim, 0);
  auto consider = [&](const Vector& u) {
    const double section = cube_central_section(u);
    if (section > worst) {
      worst = section;
      worst_dir = u;
    }
  };
  for (int i = 0; i < grid.count(); ++i) consider(grid.nodes.col(i));
  consider(Vector::Unit(dim, 0)); // axis: section 1
  Vector diag = Vector::Zero(dim);
  diag[0] = diag[1] = 1.0 / std::numbers::sqrt2; // the extremal direction
  consider(diag);
  out.max_cube_section = worst;
  out.max_section_direction = worst_dir;

  BPVerdict& v = out.verdict;
  v.dim = dim;
  v.domination = worst <= target + 1e-3;
  v.worst_section_margin = target - worst;
  v.worst_direction = worst_dir;
  // characteristic-function embedding: J = volume, deltaJ(chi,chi) = 0,
  // Ent(chi_K) = -V(K) log V(K)
  v.mass_f = 1.0;
  v.mass_g = out.ball_volume;
  v.selfdual_f = 0.0;
  v.selfdual_g = 0.0;
  v.rescale = std::max(1.0 / v.mass_f, 1.0 / v.mass_g);
  v.entropy_f_scaled = 0.0;
  v.entropy_g_scaled = v.rescale * (-out.ball_volume * std::log(out.ball_volume));
  v.tolerance = 10.0 * out.ball_volume_error;
  v.mass_ordered = v.mass_f <= v.mass_g + v.tolerance;
  v.selfdual_ordered = true;
  v.entropy_ordered = v.entropy_f_scaled >= v.entropy_g_scaled - v.tolerance;
  v.consistent_with_theorem = true; // no positive claim for n >= 5
  return out;
}

NonEvenDemo demo_noneven_necessity(const ScalarField& f, const QuadratureConfig& cfg) {
  if (f.is_even || sampled_even(f, 128, cfg.seed))
    throw computation_error("demo_noneven_necessity: construction requires non-even input");

  NonEvenDemo demo;
  // shift the potential so inf phi > 1 (multiplies the field by e^{-c0})
  const double c0 = std::max(0.0, 1.1 - f.potential_inf);
  ScalarField fs = scale_field(f, std::exp(-c0));

  ScalarField sym = dual_difference(fs);
  IntegralResult dj_f = dual_mixed_self(fs, cfg);
  IntegralResult dj_sym = dual_mixed_self(sym, cfg);
  demo.selfdual_f = dj_f.value;
  demo.selfdual_sym = dj_sym.value;

  demo.reports.push_back(make_report(
      "noneven-selfdual-positive", 0.0, dj_f.value, 5.0 * dj_f.error_estimate,
      false, "deltaJ(f,f) > 0 after the shift"));

  demo.epsilon = 0.5 * (1.0 + dj_f.value / dj_sym.value);
  demo.reports.push_back(make_report("noneven-epsilon-below-one", demo.epsilon,
                                     1.0, 0.0, false, "mixing weight < 1"));

  ScalarField g = scale_field(sym, demo.epsilon);
  // sections shrink strictly: A_g = eps * A_f on every direction
  DirectionGrid grid = DirectionGrid::make(f.dim, 16, cfg.seed);
  double min_gap = kInfinity;
  double gap_tol = 0.0;
  for (int i = 0; i < grid.count(); ++i) {
    Vector u = grid.nodes.col(i);
    IntegralResult Af = parallel_section(fs, u, 0.0, cfg);
    IntegralResult Ag = parallel_section(g, u, 0.0, cfg);
    min_gap = std::min(min_gap, Af.value - Ag.value);
    gap_tol = std::max(gap_tol, 5.0 * (Af.error_estimate + Ag.error_estimate));
  }
  demo.min_section_gap = min_gap;
  demo.reports.push_back(make_report("noneven-sections-shrink", gap_tol, min_gap,
                                     0.0, false,
                                     "min over directions of A_f - A_g"));

  IntegralResult dj_g = dual_mixed_self(g, cfg);
  demo.selfdual_g = dj_g.value;
  const double strict = 10.0 * (dj_f.error_estimate + dj_g.error_estimate);
  demo.reports.push_back(make_report("noneven-selfdual-raised",
                                     dj_f.value + strict, dj_g.value, 0.0, false,
                                     "deltaJ(g,g) > deltaJ(f,f) strictly"));
  return demo;
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(A);
  Matrix Q = qr.householderQ();
  Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0) Q.col(j) *= -1.0;
  return Q;
}

Matrix random_well_conditioned(int n, std::mt19937_64& rng, double cond_max) {
  std::uniform_real_distribution<double> unif(1.0, std::sqrt(cond_max));
  Matrix Q1 = random_orthogonal(n, rng);
  Matrix Q2 = random_orthogonal(n, rng);
  Vector s(n);
  for (int i = 0; i < n; ++i) s[i] = unif(rng);
  s /= std::sqrt(s[0] * s[n - 1]); // spread singular values around 1
  return Q1 * s.asDiagonal() * Q2;
}

namespace {

StarBody random_ellipsoid(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ax(0.6, 1.8);
  Matrix Q = random_orthogonal(n, rng);
  Vector d(n);
  for (int i = 0; i < n; ++i) {
    const double semi = ax(rng);
    d[i] = 1.0 / (semi * semi);
  }
  return make_ellipsoid_from_matrix(Q * d.asDiagonal() * Q.transpose());
}

} // namespace

ScalarField random_even_log_concave(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> sig(0.6, 1.5);
  std::uniform_real_distribution<double> cc(0.7, 1.8);
  const double kind = unif(rng);
  if (kind < 0.35) {
    Vector sigmas(n);
    for (int i = 0; i < n; ++i) sigmas[i] = sig(rng);
    return make_gaussian_diag(Vector::Zero(n), sigmas);
  }
  if (kind < 0.7) {
    const double p = unif(rng) < 0.5 ? 1.0 : 2.0;
    return make_exp_body_norm(random_ellipsoid(n, rng), p, cc(rng));
  }
  Vector sigmas(n);
  for (int i = 0; i < n; ++i) sigmas[i] = sig(rng);
  ScalarField a = make_gaussian_diag(Vector::Zero(n), sigmas);
  ScalarField b = make_exp_body_norm(random_ellipsoid(n, rng), 1.0, cc(rng));
  return product_field(a, b);
}

ScalarField random_noneven_log_concave(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> sig(0.7, 1.4);
  std::uniform_real_distribution<double> shift(0.3, 1.0);
  Vector sigmas(n), center(n);
  for (int i = 0; i < n; ++i) {
    sigmas[i] = sig(rng);
    center[i] = (i == 0) ? shift(rng) : 0.25 * shift(rng);
  }
  return make_gaussian_diag(center, sigmas);
}

StarBody random_star_body(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double kind = unif(rng);
  if (kind < 0.4) return random_ellipsoid(n, rng);
  if (kind < 0.6) {
    std::uniform_real_distribution<double> hw(0.4, 0.9);
    return make_cube(n, hw(rng));
  }
  if (kind < 0.8) {
    std::uniform_real_distribution<double> w(0.5, 1.5);
    return harmonic_p_combination(random_ellipsoid(n, rng), random_ellipsoid(n, rng),
                                  w(rng), w(rng), unif(rng) < 0.5 ? 1.0 : 2.0);
  }
  if (n == 2) {
    // even trigonometric radial perturbation of a circle
    std::uniform_real_distribution<double> amp(-0.25, 0.25);
    const double a2 = amp(rng), b2 = amp(rng), a4 = 0.5 * amp(rng);
    std::vector<double> angles, values;
    for (int i = 0; i < 64; ++i) {
      const double th = 2.0 * kPi * i / 64;
      angles.push_back(th);
      values.push_back(1.0 + a2 * std::cos(2 * th) + b2 * std::sin(2 * th) +
                       a4 * std::cos(4 * th));
    }
    return make_radial_table_2d(angles, values);
  }
  if (n == 3) {
    std::uniform_real_distribution<double> amp(-0.3, 0.3);
    return make_zonal_body({1.0, 0.0, amp(rng), 0.0, 0.5 * amp(rng)});
  }
  return random_ellipsoid(n, rng);
}

std::pair<ScalarField, ScalarField> random_dominating_pair(int n,
                                                           std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (unif(rng) < 0.5 || n == 2) {
    // pointwise-ordered composite: g(x) = c f(lambda x) >= f(x)
    std::uniform_real_distribution<double> lam(0.6, 0.95);
    std::uniform_real_distribution<double> cc(1.0, 1.7);
    ScalarField f = random_even_log_concave(n, rng);
    Matrix T = lam(rng) * Matrix::Identity(n, n);
    ScalarField g = scale_field(compose_linear(f, T), cc(rng));
    return {f, g};
  }
  // diagonal Gaussian pair with the exact section-domination criterion
  // det(Sf) u'Sg u <= det(Sg) u'Sf u for all u, i.e. with r_i = sf_i^2/sg_i^2:
  // r_i >= prod_j r_j for every i
  std::uniform_real_distribution<double> sig(0.7, 1.3);
  std::uniform_real_distribution<double> ratio(0.75, 1.15);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Vector sf(n), sg(n), r(n);
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      sf[i] = sig(rng);
      r[i] = ratio(rng);
      prod *= r[i];
    }
    bool ok = true;
    for (int i = 0; i < n; ++i)
      if (r[i] < prod) ok = false;
    if (!ok) continue;
    for (int i = 0; i < n; ++i) sg[i] = sf[i] / std::sqrt(r[i]);
    return {make_gaussian_diag(Vector::Zero(n), sf),
            make_gaussian_diag(Vector::Zero(n), sg)};
  }
  // fall back to the ordered composite
  ScalarField f = random_even_log_concave(n, rng);
  ScalarField g = scale_field(compose_linear(f, 0.8 * Matrix::Identity(n, n)), 1.2);
  return {f, g};
}

// ---------------------------------------------------------------------------
// sweeps
// ---------------------------------------------------------------------------

std::vector<InequalityReport> sweep_dual_minkowski_bodies(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg) {
  std::vector<InequalityReport> reports;
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(split_seed(seed, 1000 + i));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double p = unif(rng) < 0.5 ? 1.0 : 2.0;
    StarBody K = random_star_body(n, rng);
    const bool equality_case = (i % 5 == 4);
    StarBody L = equality_case ? dilate(K, 0.5 + unif(rng))
                               : random_star_body(n, rng);

    IntegralResult Vkp = dual_mixed_volume(K, L, p, cfg);
    IntegralResult VK = volume(K, cfg);
    IntegralResult VL = volume(L, cfg);
    // V~_{-p}(K,L)^n >= V(K)^{n+p} V(L)^{-p}, compared in the log domain
    const double lhs = (n + p) * std::log(VK.value) - p * std::log(VL.value);
    const double rhs = n * std::log(Vkp.value);
    const double tol = 5.0 * (n * Vkp.error_estimate / Vkp.value +
                              (n + p) * VK.error_estimate / VK.value +
                              p * VL.error_estimate / VL.value);
    std::ostringstream det;
    det << "n=" << n << " p=" << p << " i=" << i;
    reports.push_back(make_report("dual-minkowski-bodies", lhs, rhs, tol,
                                  equality_case, det.str()));

    // weak form: V~_{-p}(K,L) >= V(K) + V(K) log (V(K)/V(L))^{p/n}
    const double weak_lhs =
        VK.value + VK.value * (p / n) * std::log(VK.value / VL.value);
    const double weak_tol = 5.0 * (Vkp.error_estimate + VK.error_estimate +
                                   VK.error_estimate * (p / n) *
                                       std::abs(std::log(VK.value / VL.value)) +
                                   VK.error_estimate + VL.error_estimate);
    reports.push_back(make_report("dual-minkowski-weak", weak_lhs, Vkp.value,
                                  weak_tol, false, det.str()));
  }
  return reports;
}

std::vector<InequalityReport> sweep_dual_minkowski_functional(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg) {
  std::vector<InequalityReport> reports;
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(split_seed(seed, 2000 + i));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    ScalarField g = random_even_log_concave(n, rng);
    const bool equality_case = (i % 5 == 4);
    ScalarField f = equality_case ? scale_field(g, 0.5 + unif(rng))
                                  : random_even_log_concave(n, rng);

    DualMixedResult dfg = dual_mixed(f, g, cfg);
    IntegralResult dff = dual_mixed_self(f, cfg);
    IntegralResult Jf = total_mass(f, cfg);
    IntegralResult Jg = total_mass(g, cfg);
    std::ostringstream det;
    det << "n=" << n << " i=" << i;

    if (dfg.is_infinite) {
      // +inf dominates any finite right side
      reports.push_back(make_report("dual-minkowski-functional", 0.0, 1.0, 0.0,
                                    false, det.str() + " (lhs infinite)"));
      continue;
    }
    const double rhs_ineq =
        dff.value + Jf.value * std::log(Jf.value / Jg.value);
    const double tol =
        5.0 * (dfg.error_estimate + dff.error_estimate +
               Jf.error_estimate * (std::abs(std::log(Jf.value / Jg.value)) + 1.0) +
               Jg.error_estimate * Jf.value / Jg.value);
    reports.push_back(make_report("dual-minkowski-functional", rhs_ineq,
                                  dfg.value, tol, equality_case, det.str()));

    // corollary: deltaJ(f,g) >= deltaJ(f,f) + J(f) - J(g)
    const double cor_lhs = dff.value + Jf.value - Jg.value;
    const double cor_tol = 5.0 * (dfg.error_estimate + dff.error_estimate +
                                  Jf.error_estimate + Jg.error_estimate);
    reports.push_back(make_report("dual-minkowski-corollary", cor_lhs, dfg.value,
                                  cor_tol, false, det.str()));
  }
  return reports;
}

std::vector<InequalityReport> sweep_busemann_geometric(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg) {
  std::vector<InequalityReport> reports;
  const double constant =
      std::pow(unit_ball_volume(n - 1), n) / std::pow(unit_ball_volume(n), n - 2);
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(split_seed(seed, 3000 + i));
    const bool equality_case = (i % 5 == 4);
    StarBody K = equality_case
                     ? (n == 3 ? random_ellipsoid(n, rng) : random_star_body(n, rng))
                     : random_star_body(n, rng);
    // n = 2 equality holds for every origin-symmetric star body
    StarBody IK = intersection_body(K, cfg);
    IntegralResult VIK = volume(IK, cfg);
    IntegralResult VK = volume(K, cfg);
    const double rhs = constant * std::pow(VK.value, n - 1);
    const double tol =
        5.0 * (VIK.error_estimate +
               constant * (n - 1) * std::pow(VK.value, n - 2) * VK.error_estimate) +
        (equality_case ? 1e-3 * rhs : 0.0);
    std::ostringstream det;
    det << "n=" << n << " i=" << i;
    reports.push_back(make_report("busemann-intersection-bodies", VIK.value, rhs,
                                  tol, equality_case, det.str()));
  }
  return reports;
}

std::vector<InequalityReport> sweep_busemann_functional(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg) {
  std::vector<InequalityReport> reports;
  const double constant = std::tgamma(n + 1.0) *
                          std::pow(unit_ball_volume(n - 1), n) /
                          std::pow(unit_ball_volume(n), n - 2);
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(split_seed(seed, 4000 + i));
    const bool equality_case = (i % 5 == 4);
    ScalarField f;
    if (equality_case) {
      if (n == 3) f = make_characteristic(random_ellipsoid(3, rng));
      else f = make_characteristic(random_star_body(2, rng));
    } else {
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      f = unif(rng) < 0.25 ? make_characteristic(random_ellipsoid(n, rng))
                           : random_even_log_concave(n, rng);
    }
    ScalarField If = make_intersection_field(f, cfg);
    IntegralResult JIf = integrate_space(If, cfg);
    IntegralResult Jf = total_mass(f, cfg);
    const double rhs = constant * f.sup_bound * std::pow(Jf.value, n - 1);
    const double tol = 5.0 * (JIf.error_estimate +
                              constant * f.sup_bound * (n - 1) *
                                  std::pow(Jf.value, n - 2) * Jf.error_estimate) +
                       (equality_case ? 2e-3 * rhs : 1e-3 * rhs);
    std::ostringstream det;
    det << "n=" << n << " i=" << i;
    reports.push_back(make_report("busemann-intersection-functional", JIf.value,
                                  rhs, tol, equality_case, det.str()));
  }
  return reports;
}

std::vector<InequalityReport> sweep_moment_monotonicity(int count, std::uint64_t seed) {
  std::vector<InequalityReport> reports;
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(split_seed(seed, 5000 + i));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const bool characteristic = (i % 4 == 3);

    std::function<double(double)> profile;
    double sup = 1.0, radius = 1.0;
    double plateau = 0.0;
    if (characteristic) {
      plateau = 0.4 + unif(rng);
      radius = plateau;
      profile = [plateau](double r) { return r <= plateau ? 1.0 : 0.0; };
    } else {
      const double a = 0.5 + unif(rng);
      const double m = unif(rng);
      const double b = unif(rng);
      profile = [a, m, b](double r) {
        return std::exp(-a * r * r) + b * std::exp(-4.0 * (r - m) * (r - m));
      };
      sup = 0.0;
      for (int k = 0; k <= 4000; ++k) sup = std::max(sup, profile(4.0 * k / 4000.0));
      radius = 12.0;
    }

    std::vector<double> F;
    for (double p = 0.5; p <= 4.01; p += 0.5) {
      IntegralResult m = integrate_interval(
          [&](double r) { return std::pow(r, p - 1.0) * profile(r); }, 0.0,
          radius, 1e-9, 1e-14, 2'000'000);
      F.push_back(std::pow(p / sup * m.value, 1.0 / p));
    }
    double min_step = kInfinity;
    double spread = 0.0;
    for (size_t k = 0; k + 1 < F.size(); ++k) {
      min_step = std::min(min_step, F[k + 1] - F[k]);
      spread = std::max(spread, std::abs(F[k + 1] - F[k]));
    }
    std::ostringstream det;
    det << "i=" << i << (characteristic ? " characteristic" : "");
    if (characteristic) {
      // constant in p exactly for the plateau profile
      reports.push_back(make_report("moment-monotonicity-flat", spread, 1e-6,
                                    0.0, true, det.str()));
    } else {
      reports.push_back(make_report("moment-monotonicity", 0.0, min_step, 1e-9,
                                    false, det.str()));
    }
  }
  return reports;
}

std::vector<InequalityReport> sweep_ball_body_inclusion(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg) {
  std::vector<InequalityReport> reports;
  QuadratureConfig fine = cfg;
  fine.rel_tol = 1e-8;
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(split_seed(seed, 6000 + i));
    const bool characteristic = (i % 4 == 3);
    ScalarField f = characteristic ? make_characteristic(random_ellipsoid(n, rng))
                                   : random_even_log_concave(n, rng);
    const double scale = f.sup_bound / f.value_at_origin;
    DirectionGrid dirs = DirectionGrid::make(n, 16, split_seed(seed, 60000 + i));
    const double ps[3] = {1.0, 2.0, 3.0};
    StarBody bodies[3] = {ball_body(f, ps[0], fine), ball_body(f, ps[1], fine),
                          ball_body(f, ps[2], fine)};
    double min_margin = kInfinity, spread = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        for (int d = 0; d < dirs.count(); ++d) {
          Vector u = dirs.nodes.col(d);
          const double lo = std::pow(scale, -1.0 / ps[a]) * bodies[a].radial(u);
          const double hi = std::pow(scale, -1.0 / ps[b]) * bodies[b].radial(u);
          min_margin = std::min(min_margin, hi - lo);
          spread = std::max(spread, std::abs(hi - lo));
        }
      }
    }
    std::ostringstream det;
    det << "n=" << n << " i=" << i << (characteristic ? " characteristic" : "");
    if (characteristic) {
      reports.push_back(make_report("ballbody-inclusion-flat", spread, 1e-6, 0.0,
                                    true, det.str()));
    } else {
      reports.push_back(
          make_report("ballbody-inclusion", 0.0, min_margin, 1e-7, false, det.str()));
    }
  }
  return reports;
}

std::vector<InequalityReport> sweep_symmetrization(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg) {
  std::vector<InequalityReport> reports;
  QuadratureConfig fine = cfg;
  fine.rel_tol = 1e-8;
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(split_seed(seed, 7000 + i));
    ScalarField f = random_noneven_log_concave(n, rng);
    ScalarField sym = dual_difference(f);

    ScalarField If = make_intersection_field(f, fine);
    ScalarField Isym = make_intersection_field(sym, fine);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double max_dev = 0.0;
    for (int k = 0; k < 10; ++k) {
      Vector x(n);
      for (int j = 0; j < n; ++j) x[j] = gauss(rng);
      max_dev = std::max(max_dev, std::abs(If.eval(x) - Isym.eval(x)));
    }
    std::ostringstream det;
    det << "n=" << n << " i=" << i;
    reports.push_back(make_report("symmetrization-preserves-if", max_dev, 1e-6,
                                  0.0, true, det.str()));

    IntegralResult dj_f = dual_mixed_self(f, cfg);
    IntegralResult dj_sym = dual_mixed_self(sym, cfg);
    const double strict = 10.0 * (dj_f.error_estimate + dj_sym.error_estimate);
    reports.push_back(make_report("symmetrization-raises-selfdual",
                                  dj_f.value + strict, dj_sym.value, 0.0, false,
                                  det.str()));
  }
  return reports;
}

std::vector<InequalityReport> sweep_bp_positive(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg) {
  if (n < 2 || n > 4)
    throw invalid_input("sweep_bp_positive: theorem sweep runs in n = 2..4");
  QuadratureConfig c = cfg;
  if (c.sphere_points == 0) c.sphere_points = (n == 2) ? 192 : (n == 3 ? 384 : 640);
  if (c.subsphere_points == 0) c.subsphere_points = (n <= 3) ? 128 : 192;
  const int dirs = (n == 2) ? 64 : (n == 3 ? 96 : 128);

  std::vector<InequalityReport> reports;
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(split_seed(seed, 8000 + 97 * n + i));
    auto [f, g] = random_dominating_pair(n, rng);
    DirectionGrid grid = DirectionGrid::make(n, dirs, split_seed(seed, 80000 + i));
    BPVerdict v = bp_check(f, g, grid, c);
    std::ostringstream det;
    det << "n=" << n << " i=" << i << " domination=" << (v.domination ? 1 : 0)
        << " mass=" << (v.mass_ordered ? 1 : 0)
        << " selfdual=" << (v.selfdual_ordered ? 1 : 0)
        << " entropy=" << (v.entropy_ordered ? 1 : 0);
    reports.push_back(make_report("bp-positive-consistency",
                                  v.consistent_with_theorem ? 0.0 : 1.0, 0.0,
                                  0.0, false, det.str()));
  }
  return reports;
}

std::vector<InequalityReport> bp_negative_reports(int dim, int directions,
                                                  const QuadratureConfig& cfg) {
  CubeBallResult r = bp_counterexample_cube_ball(dim, directions, cfg);
  std::vector<InequalityReport> reports;
  std::ostringstream det;
  det << "n=" << dim << " r=" << r.ball_radius << " V(L)=" << r.ball_volume
      << " directions=" << r.directions;
  reports.push_back(make_report("bp-negative-section-domination",
                                r.max_cube_section, std::numbers::sqrt2, 1e-3,
                                false, det.str()));
  // V(L) < V(K) = 1 by a margin beyond ten times the volume error estimate
  reports.push_back(make_report("bp-negative-mass-reversed",
                                r.ball_volume + 10.0 * r.ball_volume_error, 1.0,
                                0.0, false, det.str()));
  reports.push_back(make_report(
      "bp-negative-verdict",
      (r.verdict.domination && !r.verdict.mass_ordered) ? 0.0 : 1.0, 0.0, 0.0,
      false, "domination holds while the mass ordering fails"));
  return reports;
}

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

SuiteResult run_suite(const std::string& name, const QuadratureConfig& cfg,
                      std::uint64_t seed) {
  SuiteResult suite;
  suite.name = name;
  suite.seed = seed;
  auto append = [&suite](std::vector<InequalityReport> extra) {
    for (auto& r : extra) suite.reports.push_back(std::move(r));
  };

  bool known = false;
  if (name == "dual-minkowski" || name == "all") {
    known = true;
    for (int n : {2, 3}) {
      append(sweep_dual_minkowski_bodies(n, 25, split_seed(seed, 11 + n), cfg));
      append(sweep_dual_minkowski_functional(n, 25, split_seed(seed, 17 + n), cfg));
    }
  }
  if (name == "busemann-intersection" || name == "all") {
    known = true;
    for (int n : {2, 3}) {
      append(sweep_busemann_geometric(n, 15, split_seed(seed, 23 + n), cfg));
      append(sweep_busemann_functional(n, 15, split_seed(seed, 29 + n), cfg));
    }
  }
  if (name == "moments" || name == "all") {
    known = true;
    append(sweep_moment_monotonicity(20, split_seed(seed, 31)));
  }
  if (name == "inclusion" || name == "all") {
    known = true;
    append(sweep_ball_body_inclusion(2, 12, split_seed(seed, 37), cfg));
    append(sweep_ball_body_inclusion(3, 8, split_seed(seed, 41), cfg));
  }
  if (name == "symmetrization" || name == "all") {
    known = true;
    append(sweep_symmetrization(2, 6, split_seed(seed, 43), cfg));
    append(sweep_symmetrization(3, 4, split_seed(seed, 47), cfg));
  }
  if (name == "bp-positive" || name == "all") {
    known = true;
    for (int n : {2, 3, 4})
      append(sweep_bp_positive(n, 50, split_seed(seed, 53 + n), cfg));
  }
  if (name == "bp-negative" || name == "all") {
    known = true;
    append(bp_negative_reports(10, 500, cfg));
  }
  if (!known) throw invalid_input("run_suite: unknown suite id '" + name + "'");

  suite.all_pass = true;
  for (const auto& r : suite.reports)
    if (!r.pass) suite.all_pass = false;
  return suite;
}

std::string suite_to_json(const SuiteResult& suite, const QuadratureConfig& cfg) {
  ordered_json j;
  j["suite"] = suite.name;
  j["seed"] = suite.seed;
  j["config"] = {{"rel_tol", cfg.rel_tol},
                 {"abs_tol", cfg.abs_tol},
                 {"max_evals", cfg.max_evals},
                 {"seed", cfg.seed},
                 {"sphere_points", cfg.sphere_points},
                 {"subsphere_points", cfg.subsphere_points}};
  j["all_pass"] = suite.all_pass;
  j["reports"] = ordered_json::array();
  for (const auto& r : suite.reports) {
    j["reports"].push_back({{"name", r.name},
                            {"lhs", r.lhs},
                            {"rhs", r.rhs},
                            {"margin", r.margin},
                            {"tolerance", r.tolerance},
                            {"pass", r.pass},
                            {"equality_expected", r.equality_expected},
                            {"details", r.details}});
  }
  return j.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<InequalityReport>& reports) {
  std::ostringstream out;
  out.precision(17);
  out << "name,lhs,rhs,margin,tolerance,pass,equality_expected,details\n";
  for (const auto& r : reports) {
    out << r.name << ',' << r.lhs << ',' << r.rhs << ',' << r.margin << ','
        << r.tolerance << ',' << (r.pass ? 1 : 0) << ','
        << (r.equality_expected ? 1 : 0) << ',' << r.details << '\n';
  }
  return out.str();
}

} // namespace lcbp
