#include "core/intersection.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace lcbp {

namespace {

/// Synchronized per-direction value cache with a deterministic quantized key.
class DirectionCache {
public:
  template <class Fn>
  double get(const Vector& u, Fn&& compute) const {
    std::vector<std::int64_t> key(u.size());
    for (int i = 0; i < u.size(); ++i)
      key[i] = static_cast<std::int64_t>(std::llround(u[i] * 1e12));
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = values_.find(key);
      if (it != values_.end()) return it->second;
    }
    const double v = compute();
    std::lock_guard<std::mutex> lock(mutex_);
    return values_.emplace(std::move(key), v).first->second;
  }

private:
  mutable std::mutex mutex_;
  mutable std::map<std::vector<std::int64_t>, double> values_;
};

double section_noise_floor(const IntegralResult& A, const QuadratureConfig& cfg) {
  return std::max(10.0 * A.error_estimate, cfg.abs_tol);
}

} // namespace

double intersection_function(const ScalarField& f, const Vector& x,
                             const QuadratureConfig& cfg) {
  if (x.size() != f.dim) throw invalid_input("intersection_function: dimension mismatch");
  const double norm = x.norm();
  if (norm == 0.0) return 1.0;
  IntegralResult A = parallel_section(f, x, 0.0, cfg);
  if (A.value <= section_noise_floor(A, cfg)) return 0.0;
  return std::exp(-norm / A.value);
}

ScalarField make_intersection_field(const ScalarField& f, const QuadratureConfig& cfg) {
  auto cache = std::make_shared<DirectionCache>();
  ScalarField base = f;
  QuadratureConfig c = cfg;

  auto section_at = [base, c, cache](const Vector& u) {
    return cache->get(u, [&]() {
      IntegralResult A = integrate_hyperplane(base, u, 0.0, c);
      if (A.value <= section_noise_floor(A, c)) return 0.0;
      return A.value;
    });
  };

  // decay scale: the largest central section over a coarse direction sweep
  DirectionGrid probe = DirectionGrid::make(f.dim, std::min(64, default_sphere_count(f.dim)), c.seed);
  double a_max = 0.0;
  for (int i = 0; i < probe.count(); ++i)
    a_max = std::max(a_max, section_at(probe.nodes.col(i)));
  if (!(a_max > 0.0))
    throw computation_error("intersection field: all probed central sections vanish");

  ScalarField g;
  g.dim = f.dim;
  g.eval = [section_at](const Vector& x) {
    const double norm = x.norm();
    if (norm == 0.0) return 1.0;
    const double A = section_at(x / norm);
    if (A <= 0.0) return 0.0;
    return std::exp(-norm / A);
  };
  g.is_even = true; // sections through the origin are direction-sign invariant
  g.is_log_concave = false;
  g.support_radius = 1.5 * a_max * std::log(1.0 / kTruncationTol);
  g.sup_bound = 1.0;
  g.value_at_origin = 1.0;
  g.potential = [section_at](const Vector& x) {
    const double norm = x.norm();
    if (norm == 0.0) return 0.0;
    const double A = section_at(x / norm);
    if (A <= 0.0) return kInfinity;
    return norm / A;
  };
  g.potential_inf = 0.0;
  return g;
}

StarBody ball_body(const ScalarField& f, double p, const QuadratureConfig& cfg) {
  if (!(p > 0.0)) throw invalid_input("ball_body: requires p > 0");
  const double f0 = f.value_at_origin;
  if (!(f0 > 0.0)) throw computation_error("Ball body undefined: f(0) <= 0");

  auto cache = std::make_shared<DirectionCache>();
  ScalarField base = f;
  QuadratureConfig c = cfg;
  const double R = f.support_radius;

  auto radial = [base, c, cache, p, f0, R](const Vector& u) {
    return cache->get(u, [&]() {
      Vector buf(base.dim);
      auto g = [&base, &u, buf, p](double r) mutable {
        buf = r * u;
        return base.eval(buf) * std::pow(r, p - 1.0);
      };
      IntegralResult m = integrate_interval(g, 0.0, R, c.resolved_rel_tol(1),
                                            c.abs_tol, c.max_evals);
      return std::pow(std::max(0.0, p / f0 * m.value), 1.0 / p);
    });
  };

  StarBody K;
  K.dim = f.dim;
  K.radial = radial;
  K.is_even = f.is_even;
  K.is_convex = f.is_log_concave; // Ball: K_p of a log-concave field is convex

  DirectionGrid probe = DirectionGrid::make(f.dim, std::min(64, default_sphere_count(f.dim)), c.seed);
  double lo = kInfinity, hi = 0.0;
  for (int i = 0; i < probe.count(); ++i) {
    const double r = radial(probe.nodes.col(i));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  if (!(lo > 0.0)) throw computation_error("Ball body undefined: radial vanishes on probe");
  K.rho_min = 0.9 * lo;
  K.rho_max = 1.1 * hi;
  return K;
}

StarBody intersection_body(const StarBody& K, const QuadratureConfig& cfg) {
  if (K.dim < 2) throw invalid_input("intersection_body: requires n >= 2");
  auto cache = std::make_shared<DirectionCache>();
  StarBody base = K;
  QuadratureConfig c = cfg;

  auto radial = [base, c, cache](const Vector& u) {
    return cache->get(u, [&]() {
      return central_section_volume(base, u, c).value;
    });
  };

  StarBody I;
  I.dim = K.dim;
  I.radial = radial;
  I.is_even = true;
  I.is_convex = K.is_convex && K.is_even; // Busemann
  const double rn = static_cast<double>(K.dim - 1);
  I.rho_min = unit_ball_volume(K.dim - 1) * std::pow(K.rho_min, rn);
  I.rho_max = unit_ball_volume(K.dim - 1) * std::pow(K.rho_max, rn);
  return I;
}

ScalarField make_if_via_ball_body_field(const ScalarField& f,
                                        const QuadratureConfig& cfg) {
  const double f0 = f.value_at_origin;
  if (!(f0 > 0.0)) throw computation_error("Ball body undefined: f(0) <= 0");
  StarBody Kb = ball_body(f, f.dim - 1.0, cfg);
  StarBody IK = intersection_body(Kb, cfg);

  ScalarField g;
  g.dim = f.dim;
  g.eval = [IK, f0](const Vector& x) {
    return std::exp(-minkowski_norm(IK, x) / f0);
  };
  g.is_even = true;
  g.is_log_concave = IK.is_convex;
  g.support_radius = f0 * IK.rho_max * std::log(1.0 / kTruncationTol) * 1.5;
  g.sup_bound = 1.0;
  g.value_at_origin = 1.0;
  g.potential = [IK, f0](const Vector& x) { return minkowski_norm(IK, x) / f0; };
  g.potential_inf = 0.0;
  return g;
}

double if_via_ball_body(const ScalarField& f, const Vector& x,
                        const QuadratureConfig& cfg) {
  if (x.size() != f.dim) throw invalid_input("if_via_ball_body: dimension mismatch");
  const double f0 = f.value_at_origin;
  if (!(f0 > 0.0)) throw computation_error("Ball body undefined: f(0) <= 0");
  const double norm = x.norm();
  if (norm == 0.0) return 1.0;
  StarBody Kb = ball_body(f, f.dim - 1.0, cfg);
  const double section = central_section_volume(Kb, x, cfg).value;
  if (!(section > 0.0)) return 0.0;
  return std::exp(-norm / (f0 * section));
}

GlCheckResult gl_transform_check(const ScalarField& f, const Matrix& T,
                                 const std::vector<Vector>& sample_points,
                                 const QuadratureConfig& cfg, double tolerance) {
  if (sample_points.empty()) throw invalid_input("gl_transform_check: empty sample");
  ScalarField fT = compose_linear(f, T); // throws on singular T
  ScalarField lhs = make_intersection_field(fT, cfg);
  ScalarField rhs_base = make_intersection_field(f, cfg);
  const Matrix M = std::abs(T.determinant()) * T.inverse().transpose();

  GlCheckResult res;
  res.tolerance = tolerance;
  res.worst_point = sample_points.front();
  for (const Vector& x : sample_points) {
    const double a = lhs.eval(x);
    const double b = rhs_base.eval(M * x);
    const double dev = std::abs(a - b);
    if (dev > res.max_deviation) {
      res.max_deviation = dev;
      res.worst_point = x;
    }
  }
  res.pass = res.max_deviation <= tolerance;
  return res;
}

MembershipResult is_intersection_function_n3(const ScalarField& f, int lmax,
                                             double tol,
                                             const QuadratureConfig& cfg) {
  if (f.dim != 3)
    throw invalid_input("is_intersection_function_n3: only n = 3 is supported");
  if (!(tol > 0.0)) throw invalid_input("is_intersection_function_n3: tol must be positive");
  if (!f.is_even || !sampled_even(f, 64, cfg.seed))
    throw computation_error("is_intersection_function_n3: input must be even");

  StarBody Kb = ball_body(f, 2.0, cfg);
  auto rho = Kb.radial;
  RadonInverseResult inv =
      spherical_radon_inverse_n3([rho](const Vector& u) { return rho(u); }, lmax,
                                 std::max(1e-6, tol));

  MembershipResult out;
  out.odd_energy_fraction = inv.odd_energy_fraction;
  out.residual_l2 = inv.residual_l2;
  out.preimage = inv.preimage;

  SphereAnalysis rho_an = analyze_sphere_function([rho](const Vector& u) { return rho(u); }, lmax);
  out.rho_expansion = rho_an.expansion;

  // dense sign scan of the reconstructed preimage
  DirectionGrid scan = DirectionGrid::make(3, 8192, cfg.seed);
  double lo = kInfinity;
  for (int i = 0; i < scan.count(); ++i)
    lo = std::min(lo, inv.preimage.eval(scan.nodes.col(i)));
  out.min_preimage = lo;
  const double mean = inv.preimage.coeff(0, 0) / std::sqrt(4.0 * std::numbers::pi);
  const double scale = std::max(std::abs(mean), 1e-12);
  out.min_relative = lo / scale;

  if (out.min_relative > tol) out.verdict = MembershipResult::Verdict::yes;
  else if (out.min_relative < -tol) out.verdict = MembershipResult::Verdict::no;
  else out.verdict = MembershipResult::Verdict::inconclusive;
  return out;
}

const char* to_string(MembershipResult::Verdict v) {
  switch (v) {
    case MembershipResult::Verdict::yes: return "yes";
    case MembershipResult::Verdict::no: return "no";
    default: return "inconclusive";
  }
}

} // namespace lcbp
