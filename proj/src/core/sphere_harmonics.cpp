#include "core/sphere_harmonics.hpp"

#include "core/direction_grid.hpp"
#include "core/star_body.hpp"

#include <cmath>
#include <numbers>

namespace lcbp {

namespace {
constexpr double kPi = std::numbers::pi;
}

void normalized_assoc_legendre(int lmax, double x, std::vector<double>& table) {
  // table[l * (lmax + 1) + m] = P~_l^m(x), 0 <= m <= l
  const int stride = lmax + 1;
  table.assign(static_cast<size_t>(stride) * stride, 0.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));

  table[0] = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 1; m <= lmax; ++m) {
    table[m * stride + m] =
        -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * table[(m - 1) * stride + (m - 1)];
  }
  for (int m = 0; m < lmax; ++m) {
    table[(m + 1) * stride + m] = x * std::sqrt(2.0 * m + 3.0) * table[m * stride + m];
  }
  for (int m = 0; m <= lmax; ++m) {
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - m * m) /
                                 (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
      table[l * stride + m] =
          a * (x * table[(l - 1) * stride + m] - b * table[(l - 2) * stride + m]);
    }
  }
}

double SphericalHarmonicExpansion::eval_angles(double cos_theta, double phi) const {
  std::vector<double> plm;
  normalized_assoc_legendre(lmax, cos_theta, plm);
  const int stride = lmax + 1;
  double acc = 0.0;
  for (int l = 0; l <= lmax; ++l) {
    acc += coeff(l, 0) * plm[l * stride];
    for (int m = 1; m <= l; ++m) {
      const double base = std::numbers::sqrt2 * plm[l * stride + m];
      acc += coeff(l, m) * base * std::cos(m * phi);
      acc += coeff(l, -m) * base * std::sin(m * phi);
    }
  }
  return acc;
}

double SphericalHarmonicExpansion::eval(const Vector& u) const {
  const double norm = u.norm();
  const double ct = u[2] / norm;
  const double phi = std::atan2(u[1], u[0]);
  return eval_angles(ct, phi);
}

double SphericalHarmonicExpansion::even_energy() const {
  double acc = 0.0;
  for (int l = 0; l <= lmax; l += 2)
    for (int m = -l; m <= l; ++m) acc += coeff(l, m) * coeff(l, m);
  return acc;
}

double SphericalHarmonicExpansion::odd_energy() const {
  double acc = 0.0;
  for (int l = 1; l <= lmax; l += 2)
    for (int m = -l; m <= l; ++m) acc += coeff(l, m) * coeff(l, m);
  return acc;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw invalid_input("gauss_legendre: need at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // P_n(x) and its derivative by recurrence
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

SphereAnalysis analyze_sphere_function(const std::function<double(const Vector&)>& g,
                                       int lmax, int theta_nodes, int phi_nodes) {
  if (lmax < 0) throw invalid_input("analyze_sphere_function: lmax must be >= 0");
  // default grid generously above band limit to tame aliasing of smooth inputs
  const int q = theta_nodes > 0 ? theta_nodes : std::max(48, 2 * lmax + 2);
  const int p = phi_nodes > 0 ? phi_nodes : std::max(96, 2 * (2 * lmax + 1));

  std::vector<double> xs, ws;
  gauss_legendre(q, xs, ws);

  SphereAnalysis out;
  out.expansion.lmax = lmax;
  out.expansion.coeffs.assign(static_cast<size_t>(lmax + 1) * (lmax + 1), 0.0);

  const int stride = lmax + 1;
  std::vector<double> plm;
  std::vector<double> samples(static_cast<size_t>(q) * p);
  double g_rms = 0.0;

  Vector u(3);
  for (int i = 0; i < q; ++i) {
    const double ct = xs[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    normalized_assoc_legendre(lmax, ct, plm);
    for (int j = 0; j < p; ++j) {
      const double phi = 2.0 * kPi * j / p;
      u[0] = st * std::cos(phi);
      u[1] = st * std::sin(phi);
      u[2] = ct;
      const double gv = g(u);
      samples[static_cast<size_t>(i) * p + j] = gv;
      g_rms += gv * gv * ws[i];
      const double wq = ws[i] * (2.0 * kPi / p) * gv;
      for (int l = 0; l <= lmax; ++l) {
        out.expansion.coeff(l, 0) += wq * plm[l * stride];
        for (int m = 1; m <= l; ++m) {
          const double base = std::numbers::sqrt2 * plm[l * stride + m];
          out.expansion.coeff(l, m) += wq * base * std::cos(m * phi);
          out.expansion.coeff(l, -m) += wq * base * std::sin(m * phi);
        }
      }
    }
  }

  // truncation residual on the analysis grid
  double mis = 0.0, den = 0.0;
  for (int i = 0; i < q; ++i) {
    normalized_assoc_legendre(lmax, xs[i], plm);
    for (int j = 0; j < p; ++j) {
      const double phi = 2.0 * kPi * j / p;
      double synth = 0.0;
      for (int l = 0; l <= lmax; ++l) {
        synth += out.expansion.coeff(l, 0) * plm[l * stride];
        for (int m = 1; m <= l; ++m) {
          const double base = std::numbers::sqrt2 * plm[l * stride + m];
          synth += out.expansion.coeff(l, m) * base * std::cos(m * phi);
          synth += out.expansion.coeff(l, -m) * base * std::sin(m * phi);
        }
      }
      const double d = samples[static_cast<size_t>(i) * p + j] - synth;
      mis += d * d * ws[i];
      den += samples[static_cast<size_t>(i) * p + j] *
             samples[static_cast<size_t>(i) * p + j] * ws[i];
    }
  }
  out.residual_l2 = den > 0 ? std::sqrt(mis / den) : 0.0;
  return out;
}

double radon_multiplier_s2(int l) {
  if (l < 0) throw invalid_input("radon_multiplier_s2: negative degree");
  if (l % 2 == 1) return 0.0;
  return 2.0 * kPi * legendre_p(l, 0.0);
}

SphericalHarmonicExpansion radon_transform_expansion(const SphericalHarmonicExpansion& h) {
  SphericalHarmonicExpansion out = h;
  for (int l = 0; l <= h.lmax; ++l) {
    const double mult = radon_multiplier_s2(l);
    for (int m = -l; m <= l; ++m) out.coeff(l, m) = mult * h.coeff(l, m);
  }
  return out;
}

RadonInverseResult spherical_radon_inverse_n3(
    const std::function<double(const Vector&)>& g, int lmax, double odd_tol) {
  if (lmax < 0 || lmax > 64)
    throw invalid_input("spherical_radon_inverse_n3: lmax out of range");
  SphereAnalysis analysis = analyze_sphere_function(g, lmax);

  RadonInverseResult out;
  const double even = analysis.expansion.even_energy();
  const double odd = analysis.expansion.odd_energy();
  out.odd_energy_fraction = (even + odd) > 0 ? odd / (even + odd) : 0.0;
  out.residual_l2 = analysis.residual_l2;
  if (out.odd_energy_fraction > odd_tol)
    throw computation_error("not even: odd-degree energy above tolerance in Radon inversion");

  out.preimage.lmax = lmax;
  out.preimage.coeffs.assign(analysis.expansion.coeffs.size(), 0.0);
  for (int l = 0; l <= lmax; l += 2) {
    const double mult = radon_multiplier_s2(l);
    for (int m = -l; m <= l; ++m)
      out.preimage.coeff(l, m) = analysis.expansion.coeff(l, m) / mult;
  }
  return out;
}

double spherical_radon(int dim, const std::function<double(const Vector&)>& h,
                       const Vector& u, int nodes) {
  if (dim < 2) throw invalid_input("spherical_radon: requires n >= 2");
  if (u.size() != dim) throw invalid_input("spherical_radon: dimension mismatch");
  const double norm = u.norm();
  if (!(norm > 0.0)) throw invalid_input("spherical_radon: zero direction");
  Matrix C = orthonormal_completion(u / norm);
  const int m = dim - 1;
  const int count = nodes > 0 ? nodes : default_sphere_count(m);
  DirectionGrid grid = DirectionGrid::make(m, count, 0);
  double acc = 0.0;
  for (int i = 0; i < grid.count(); ++i) {
    Vector v = C * grid.nodes.col(i);
    acc += grid.weights[i] * h(v);
  }
  return acc;
}

} // namespace lcbp
