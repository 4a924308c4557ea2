#include "core/star_body.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace lcbp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double StarBody::radial_at(const Vector& x) const {
  const double norm = x.norm();
  if (!(norm > 0.0)) throw invalid_input("radial_at: undefined at the origin");
  return radial(x / norm) / norm;
}

double minkowski_norm(const StarBody& K, const Vector& x) {
  if (x.size() != K.dim) throw invalid_input("minkowski_norm: dimension mismatch");
  const double norm = x.norm();
  if (norm == 0.0) return 0.0;
  return norm / K.radial(x / norm);
}

double legendre_p(int l, double x) {
  if (l < 0) throw invalid_input("legendre_p: negative degree");
  if (l == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int k = 1; k < l; ++k) {
    const double next = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
    pm1 = p;
    p = next;
  }
  return p;
}

StarBody make_ball(int dim, double radius) {
  if (dim < 1) throw invalid_input("make_ball: dimension must be >= 1");
  if (!(radius > 0.0)) throw invalid_input("make_ball: radius must be positive");
  StarBody b;
  b.dim = dim;
  b.radial = [radius](const Vector&) { return radius; };
  b.is_even = true;
  b.is_convex = true;
  b.rho_min = b.rho_max = radius;
  return b;
}

StarBody make_ellipsoid_from_matrix(const Matrix& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || n < 1) throw invalid_input("make_ellipsoid: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (A + A.transpose()));
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  if (!(lmin > 0.0)) throw invalid_input("make_ellipsoid: matrix must be positive definite");
  Matrix As = 0.5 * (A + A.transpose());
  StarBody b;
  b.dim = n;
  b.radial = [As](const Vector& u) { return 1.0 / std::sqrt(u.dot(As * u)); };
  b.is_even = true;
  b.is_convex = true;
  b.rho_min = 1.0 / std::sqrt(lmax);
  b.rho_max = 1.0 / std::sqrt(lmin);
  return b;
}

StarBody make_ellipsoid(const std::vector<double>& semi_axes) {
  const int n = static_cast<int>(semi_axes.size());
  if (n < 1) throw invalid_input("make_ellipsoid: need at least one semi-axis");
  Matrix A = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (!(semi_axes[i] > 0.0)) throw invalid_input("make_ellipsoid: semi-axes must be positive");
    A(i, i) = 1.0 / (semi_axes[i] * semi_axes[i]);
  }
  return make_ellipsoid_from_matrix(A);
}

StarBody make_cube(int dim, double half_width) {
  if (dim < 1) throw invalid_input("make_cube: dimension must be >= 1");
  if (!(half_width > 0.0)) throw invalid_input("make_cube: half width must be positive");
  StarBody b;
  b.dim = dim;
  b.radial = [half_width](const Vector& u) {
    return half_width / u.cwiseAbs().maxCoeff();
  };
  b.is_even = true;
  b.is_convex = true;
  b.rho_min = half_width;
  b.rho_max = half_width * std::sqrt(static_cast<double>(dim));
  return b;
}

StarBody make_radial_table_2d(const std::vector<double>& angles,
                              const std::vector<double>& values) {
  if (angles.size() != values.size() || angles.size() < 3)
    throw invalid_input("radial_table: need >= 3 matching (angle, rho) pairs");
  struct Sample { double angle, value; };
  auto table = std::make_shared<std::vector<Sample>>();
  for (size_t i = 0; i < angles.size(); ++i) {
    if (!(values[i] > 0.0)) throw invalid_input("radial_table: rho values must be positive");
    double a = std::fmod(angles[i], kTwoPi);
    if (a < 0) a += kTwoPi;
    table->push_back({a, values[i]});
  }
  std::sort(table->begin(), table->end(),
            [](const Sample& a, const Sample& b) { return a.angle < b.angle; });

  double lo = values[0], hi = values[0];
  for (double v : values) { lo = std::min(lo, v); hi = std::max(hi, v); }

  bool even = true;
  StarBody b;
  b.dim = 2;
  b.radial = [table](const Vector& u) {
    double a = std::atan2(u[1], u[0]);
    if (a < 0) a += kTwoPi;
    const auto& t = *table;
    // interval [t[j], t[j+1]) containing a, with wrap-around
    auto it = std::upper_bound(t.begin(), t.end(), a,
                               [](double x, const Sample& s) { return x < s.angle; });
    size_t j1 = static_cast<size_t>(it - t.begin()) % t.size();
    size_t j0 = (j1 + t.size() - 1) % t.size();
    double a0 = t[j0].angle, a1 = t[j1].angle;
    double span = a1 - a0;
    if (span <= 0) span += kTwoPi;
    double d = a - a0;
    if (d < 0) d += kTwoPi;
    const double w = (span > 0) ? d / span : 0.0;
    return (1.0 - w) * t[j0].value + w * t[j1].value;
  };
  // evenness is a claim; verify against the table itself
  for (const auto& s : *table) {
    Vector u(2), v(2);
    u << std::cos(s.angle), std::sin(s.angle);
    v = -u;
    if (std::abs(b.radial(u) - b.radial(v)) > 1e-9 * hi) { even = false; break; }
  }
  b.is_even = even;
  b.is_convex = false;
  b.rho_min = lo;
  b.rho_max = hi;
  return b;
}

StarBody make_zonal_body(const std::vector<double>& legendre_coeffs) {
  if (legendre_coeffs.empty()) throw invalid_input("zonal body: empty coefficient list");
  auto coeffs = std::make_shared<std::vector<double>>(legendre_coeffs);
  auto eval_series = [coeffs](double z) {
    double s = 0.0;
    for (size_t l = 0; l < coeffs->size(); ++l) s += (*coeffs)[l] * legendre_p(static_cast<int>(l), z);
    return s;
  };
  double lo = kInfinity, hi = -kInfinity;
  for (int i = 0; i <= 4096; ++i) {
    const double z = -1.0 + 2.0 * i / 4096.0;
    const double v = eval_series(z);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo > 0.0)) throw invalid_input("zonal body: radial series not positive on [-1,1]");

  bool even = true;
  for (size_t l = 1; l < coeffs->size(); l += 2)
    if ((*coeffs)[l] != 0.0) even = false;

  StarBody b;
  b.dim = 3;
  b.radial = [eval_series](const Vector& u) { return eval_series(u[2]); };
  b.is_even = even;
  b.is_convex = false;
  b.rho_min = lo;
  b.rho_max = hi;
  return b;
}

StarBody linear_image(const StarBody& K, const Matrix& T) {
  if (T.rows() != K.dim || T.cols() != K.dim)
    throw invalid_input("linear_image: matrix dimension mismatch");
  Eigen::JacobiSVD<Matrix> svd(T);
  const double smax = svd.singularValues().maxCoeff();
  const double smin = svd.singularValues().minCoeff();
  if (!(smin > 0.0) || smax / smin > 1e8)
    throw invalid_input("linear_image: matrix is singular or near-singular");
  Matrix Tinv = T.inverse();
  auto base = K.radial;
  StarBody b;
  b.dim = K.dim;
  b.radial = [base, Tinv](const Vector& u) {
    Vector v = Tinv * u;
    const double norm = v.norm();
    return base(v / norm) / norm;
  };
  b.is_even = K.is_even;
  b.is_convex = K.is_convex;
  b.rho_min = K.rho_min * smin;
  b.rho_max = K.rho_max * smax;
  return b;
}

StarBody harmonic_p_combination(const StarBody& K, const StarBody& L,
                                double s, double t, double p) {
  if (K.dim != L.dim) throw invalid_input("harmonic_p_combination: dimension mismatch");
  if (!(p >= 1.0)) throw invalid_input("harmonic_p_combination: requires p >= 1");
  if (!(s > 0.0) || !(t > 0.0)) throw invalid_input("harmonic_p_combination: weights must be positive");
  auto rk = K.radial;
  auto rl = L.radial;
  StarBody b;
  b.dim = K.dim;
  b.radial = [rk, rl, s, t, p](const Vector& u) {
    return std::pow(s * std::pow(rk(u), -p) + t * std::pow(rl(u), -p), -1.0 / p);
  };
  b.is_even = K.is_even && L.is_even;
  b.is_convex = K.is_convex && L.is_convex;
  auto combine = [s, t, p](double a, double c) {
    return std::pow(s * std::pow(a, -p) + t * std::pow(c, -p), -1.0 / p);
  };
  b.rho_min = combine(K.rho_min, L.rho_min);
  b.rho_max = combine(K.rho_max, L.rho_max);
  return b;
}

StarBody dilate(const StarBody& K, double a) {
  if (!(a > 0.0)) throw invalid_input("dilate: factor must be positive");
  auto base = K.radial;
  StarBody b = K;
  b.radial = [base, a](const Vector& u) { return a * base(u); };
  b.rho_min = a * K.rho_min;
  b.rho_max = a * K.rho_max;
  return b;
}

} // namespace lcbp
