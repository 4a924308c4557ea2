#include "core/field.hpp"

#include <cmath>

namespace lcbp {

namespace {

std::function<double(const Vector&)> derived_potential(
    std::function<double(const Vector&)> eval) {
  return [eval](const Vector& x) {
    const double v = eval(x);
    return v > 0.0 ? -std::log(v) : kInfinity;
  };
}

Vector sample_in_ball(int dim, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector x(dim);
  for (int i = 0; i < dim; ++i) x[i] = gauss(rng);
  const double norm = x.norm();
  if (norm == 0.0) return Vector::Zero(dim);
  const double r = radius * std::pow(unif(rng), 1.0 / dim);
  return (r / norm) * x;
}

} // namespace

ScalarField make_gaussian(int dim, double sigma) {
  if (dim < 1) throw invalid_input("make_gaussian: dimension must be >= 1");
  if (!(sigma > 0.0)) throw invalid_input("make_gaussian: sigma must be positive");
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  ScalarField f;
  f.dim = dim;
  f.eval = [inv2s2](const Vector& x) { return std::exp(-x.squaredNorm() * inv2s2); };
  f.is_even = true;
  f.is_log_concave = true;
  f.support_radius = sigma * std::sqrt(2.0 * std::log(1.0 / kTruncationTol));
  f.sup_bound = 1.0;
  f.value_at_origin = 1.0;
  f.potential = [inv2s2](const Vector& x) { return x.squaredNorm() * inv2s2; };
  f.potential_inf = 0.0;
  return f;
}

ScalarField make_gaussian_diag(const Vector& center, const Vector& sigmas) {
  const int n = static_cast<int>(center.size());
  if (sigmas.size() != n || n < 1) throw invalid_input("make_gaussian_diag: size mismatch");
  if (!(sigmas.minCoeff() > 0.0)) throw invalid_input("make_gaussian_diag: sigmas must be positive");
  Vector c = center;
  Vector s = sigmas;
  auto phi = [c, s](const Vector& x) {
    double acc = 0.0;
    for (int i = 0; i < x.size(); ++i) {
      const double d = (x[i] - c[i]) / s[i];
      acc += 0.5 * d * d;
    }
    return acc;
  };
  ScalarField f;
  f.dim = n;
  f.eval = [phi](const Vector& x) { return std::exp(-phi(x)); };
  f.is_even = (c.norm() == 0.0);
  f.is_log_concave = true;
  f.support_radius =
      c.norm() + s.maxCoeff() * std::sqrt(2.0 * std::log(1.0 / kTruncationTol));
  f.sup_bound = 1.0;
  f.value_at_origin = f.eval(Vector::Zero(n));
  f.potential = phi;
  f.potential_inf = 0.0;
  return f;
}

ScalarField make_exp_body_norm(const StarBody& K, double p, double c) {
  if (!(p >= 1.0)) throw invalid_input("make_exp_body_norm: requires p >= 1");
  if (!(c > 0.0)) throw invalid_input("make_exp_body_norm: requires c > 0");
  StarBody body = K;
  ScalarField f;
  f.dim = K.dim;
  f.eval = [body, p, c](const Vector& x) {
    return std::exp(-c * std::pow(minkowski_norm(body, x), p));
  };
  f.is_even = K.is_even;
  f.is_log_concave = K.is_convex; // ||.||_K^p convex only for convex K
  f.support_radius =
      std::pow(std::log(1.0 / kTruncationTol) / c, 1.0 / p) * K.rho_max;
  f.sup_bound = 1.0;
  f.value_at_origin = 1.0;
  f.potential = [body, p, c](const Vector& x) {
    return c * std::pow(minkowski_norm(body, x), p);
  };
  f.potential_inf = 0.0;
  return f;
}

ScalarField make_characteristic(const StarBody& K) {
  StarBody body = K;
  ScalarField f;
  f.dim = K.dim;
  f.eval = [body](const Vector& x) {
    return minkowski_norm(body, x) <= 1.0 ? 1.0 : 0.0;
  };
  f.is_even = K.is_even;
  f.is_log_concave = K.is_convex;
  f.support_radius = K.rho_max;
  f.sup_bound = 1.0;
  f.value_at_origin = 1.0;
  f.potential = [body](const Vector& x) {
    return minkowski_norm(body, x) <= 1.0 ? 0.0 : kInfinity;
  };
  f.potential_inf = 0.0;
  return f;
}

ScalarField compose_linear(const ScalarField& f, const Matrix& T) {
  if (T.rows() != f.dim || T.cols() != f.dim)
    throw invalid_input("compose_linear: matrix dimension mismatch");
  Eigen::JacobiSVD<Matrix> svd(T);
  const double smax = svd.singularValues().maxCoeff();
  const double smin = svd.singularValues().minCoeff();
  if (!(smin > 0.0) || smax / smin > 1e8)
    throw invalid_input("compose_linear: matrix is singular or near-singular");
  Matrix Tc = T;
  auto base = f.eval;
  auto base_pot = f.potential;
  ScalarField g;
  g.dim = f.dim;
  g.eval = [base, Tc](const Vector& x) { return base(Tc * x); };
  g.is_even = f.is_even;
  g.is_log_concave = f.is_log_concave;
  g.support_radius = f.support_radius / smin; // ||x|| > R/smin => ||Tx|| > R
  g.sup_bound = f.sup_bound;
  g.value_at_origin = f.value_at_origin;
  if (base_pot) g.potential = [base_pot, Tc](const Vector& x) { return base_pot(Tc * x); };
  else g.potential = derived_potential(g.eval);
  g.potential_inf = f.potential_inf;
  return g;
}

ScalarField scale_field(const ScalarField& f, double a) {
  if (!(a > 0.0)) throw invalid_input("scale_field: factor must be positive");
  auto base = f.eval;
  auto base_pot = f.potential ? f.potential : derived_potential(base);
  const double log_a = std::log(a);
  ScalarField g = f;
  g.eval = [base, a](const Vector& x) { return a * base(x); };
  g.sup_bound = a * f.sup_bound;
  g.value_at_origin = a * f.value_at_origin;
  g.potential = [base_pot, log_a](const Vector& x) { return base_pot(x) - log_a; };
  g.potential_inf = f.potential_inf - log_a;
  // outside the parent radius the scaled field stays below a * tol
  g.support_radius = f.support_radius;
  return g;
}

ScalarField product_field(const ScalarField& f, const ScalarField& g) {
  if (f.dim != g.dim) throw invalid_input("product_field: dimension mismatch");
  auto ef = f.eval, eg = g.eval;
  auto pf = f.potential ? f.potential : derived_potential(ef);
  auto pg = g.potential ? g.potential : derived_potential(eg);
  ScalarField h;
  h.dim = f.dim;
  h.eval = [ef, eg](const Vector& x) { return ef(x) * eg(x); };
  h.is_even = f.is_even && g.is_even;
  h.is_log_concave = f.is_log_concave && g.is_log_concave;
  h.support_radius = std::min(f.support_radius, g.support_radius);
  h.sup_bound = f.sup_bound * g.sup_bound;
  h.value_at_origin = f.value_at_origin * g.value_at_origin;
  h.potential = [pf, pg](const Vector& x) { return pf(x) + pg(x); };
  h.potential_inf = f.potential_inf + g.potential_inf;
  return h;
}

ScalarField dual_difference(const ScalarField& f) {
  auto base = f.eval;
  ScalarField g;
  g.dim = f.dim;
  g.eval = [base](const Vector& x) {
    return 0.5 * (base(x) + base(Vector(-x)));
  };
  g.is_even = true;
  g.is_log_concave = false; // not preserved in general
  g.support_radius = f.support_radius;
  g.sup_bound = f.sup_bound;
  g.value_at_origin = f.value_at_origin;
  g.potential = derived_potential(g.eval);
  g.potential_inf = f.potential_inf; // sup (f+f^-)/2 <= sup f
  return g;
}

ConvexPotential shift_potential(const ConvexPotential& phi, double c) {
  auto base = phi.eval;
  ConvexPotential q = phi;
  q.eval = [base, c](const Vector& x) { return base(x) + c; };
  q.inf_value = phi.inf_value + c;
  return q;
}

ConvexPotential harmonic_combination(const ConvexPotential& phi,
                                     const ConvexPotential& psi, double t) {
  if (phi.dim != psi.dim) throw invalid_input("harmonic_combination: dimension mismatch");
  if (!(t > 0.0)) throw invalid_input("harmonic_combination: requires t > 0");
  auto a = phi.eval, b = psi.eval;
  ConvexPotential q;
  q.dim = phi.dim;
  q.eval = [a, b, t](const Vector& x) { return a(x) + t * b(x); };
  q.dom_radius = std::min(phi.dom_radius, psi.dom_radius);
  q.is_even = phi.is_even && psi.is_even;
  q.is_convex = phi.is_convex && psi.is_convex;
  q.inf_value = phi.inf_value + t * psi.inf_value; // lower bound for inf(phi + t psi)
  return q;
}

ConvexPotential potential_of(const ScalarField& f) {
  ConvexPotential p;
  p.dim = f.dim;
  p.eval = f.potential ? f.potential : derived_potential(f.eval);
  p.dom_radius = kInfinity;
  p.is_even = f.is_even;
  p.is_convex = f.is_log_concave;
  p.inf_value = f.potential ? f.potential_inf
                            : (f.sup_bound > 0 ? -std::log(f.sup_bound) : kInfinity);
  return p;
}

ScalarField field_of(const ConvexPotential& phi, double support_radius) {
  if (!(support_radius > 0.0)) throw invalid_input("field_of: support radius must be positive");
  auto p = phi.eval;
  ScalarField f;
  f.dim = phi.dim;
  f.eval = [p](const Vector& x) {
    const double v = p(x);
    return std::isinf(v) ? 0.0 : std::exp(-v);
  };
  f.is_even = phi.is_even;
  f.is_log_concave = phi.is_convex;
  f.support_radius = support_radius;
  f.sup_bound = std::exp(-phi.inf_value);
  f.value_at_origin = f.eval(Vector::Zero(phi.dim));
  f.potential = p;
  f.potential_inf = phi.inf_value;
  return f;
}

ScalarField harmonic_combination_field(const ScalarField& f,
                                       const ScalarField& g, double t) {
  if (f.dim != g.dim) throw invalid_input("harmonic_combination_field: dimension mismatch");
  ConvexPotential comb = harmonic_combination(potential_of(f), potential_of(g), t);
  // e^{-phi - t psi} <= f * e^{-t inf psi}: the parent radius certifies
  // truncation whenever psi is bounded below.
  double radius = std::max(f.support_radius, g.support_radius);
  ScalarField h = field_of(comb, radius);
  h.sup_bound = f.sup_bound * std::exp(-t * std::min(0.0, g.potential_inf));
  return h;
}

bool sampled_even(const ScalarField& f, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(split_seed(seed, 0xeefu));
  const double tol = 1e-9 * std::max(1.0, f.sup_bound);
  for (int i = 0; i < samples; ++i) {
    Vector x = sample_in_ball(f.dim, f.support_radius, rng);
    if (std::abs(f.eval(x) - f.eval(Vector(-x))) > tol) return false;
  }
  return true;
}

void validate_field(const ScalarField& f, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(split_seed(seed, 0xfa11u));
  const double tol = 1e-9 * std::max(1.0, f.sup_bound);
  const double origin_val = f.eval(Vector::Zero(f.dim));
  if (std::abs(origin_val - f.value_at_origin) > tol)
    throw computation_error("field claim violated: value_at_origin");
  for (int i = 0; i < samples; ++i) {
    Vector x = sample_in_ball(f.dim, f.support_radius, rng);
    const double fx = f.eval(x);
    if (!std::isfinite(fx) || fx < 0.0)
      throw computation_error("field claim violated: nonnegative finite values");
    if (fx > f.sup_bound + tol)
      throw computation_error("field claim violated: sup_bound");
    if (f.is_even && std::abs(fx - f.eval(Vector(-x))) > tol)
      throw computation_error("field claim violated: evenness");
    if (f.is_log_concave) {
      Vector y = sample_in_ball(f.dim, f.support_radius, rng);
      const double fy = f.eval(y);
      const double fm = f.eval(Vector(0.5 * (x + y)));
      // midpoint form f((x+y)/2)^2 >= f(x) f(y), with sampling slack
      if (fm * fm + tol < fx * fy * (1.0 - 1e-9))
        throw computation_error("field claim violated: midpoint log-concavity");
    }
  }
}

} // namespace lcbp
