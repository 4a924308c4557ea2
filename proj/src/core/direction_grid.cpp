#include "core/direction_grid.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace lcbp {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kGoldenAngle = 2.399963229728653; // pi * (3 - sqrt(5))
} // namespace

DirectionGrid DirectionGrid::make(int dim, int count, std::uint64_t seed) {
  if (dim < 1) throw invalid_input("DirectionGrid: dimension must be >= 1");
  if (count < 1) throw invalid_input("DirectionGrid: count must be >= 1");

  DirectionGrid g;
  g.dim = dim;
  g.seed = seed;

  if (dim == 1) {
    g.nodes = Matrix(1, 2);
    g.nodes(0, 0) = 1.0;
    g.nodes(0, 1) = -1.0;
    g.weights = Vector::Constant(2, 1.0);
    g.scheme = "s0";
    return g;
  }

  if (dim == 2) {
    g.nodes = Matrix(2, count);
    for (int i = 0; i < count; ++i) {
      const double theta = 2.0 * kPi * (i + 0.5) / count;
      g.nodes(0, i) = std::cos(theta);
      g.nodes(1, i) = std::sin(theta);
    }
    g.weights = Vector::Constant(count, 2.0 * kPi / count);
    g.scheme = "angular";
    return g;
  }

  if (dim == 3) {
    // Area-equalized spiral: z descends uniformly, azimuth steps by the
    // golden angle.
    g.nodes = Matrix(3, count);
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = kGoldenAngle * i;
      g.nodes(0, i) = r * std::cos(phi);
      g.nodes(1, i) = r * std::sin(phi);
      g.nodes(2, i) = z;
    }
    g.weights = Vector::Constant(count, 4.0 * kPi / count);
    g.scheme = "spiral";
    return g;
  }

  std::mt19937_64 rng(split_seed(seed, 0x5f3759df));
  std::normal_distribution<double> gauss(0.0, 1.0);
  g.nodes = Matrix(dim, count);
  for (int i = 0; i < count; ++i) {
    Vector v(dim);
    double norm2 = 0.0;
    do {
      for (int j = 0; j < dim; ++j) v[j] = gauss(rng);
      norm2 = v.squaredNorm();
    } while (norm2 < 1e-12);
    g.nodes.col(i) = v / std::sqrt(norm2);
  }
  g.weights = Vector::Constant(count, sphere_surface_area(dim) / count);
  g.scheme = "seeded";
  return g;
}

int default_sphere_count(int dim) {
  switch (dim) {
    case 1: return 2;
    case 2: return 256;
    case 3: return 1024;
    case 4: return 2048;
    default: return 4096;
  }
}

Matrix orthonormal_completion(const Vector& u) {
  const int n = static_cast<int>(u.size());
  if (n < 2) throw invalid_input("orthonormal_completion: dimension must be >= 2");
  const double norm = u.norm();
  if (!(norm > 0.0)) throw invalid_input("orthonormal_completion: zero direction");
  Vector w = u / norm;

  // Householder H = I - 2 v v^T / (v^T v) with v = w +- e_1 (sign chosen to
  // avoid cancellation).  H maps e_1 to -+w, so columns 2..n of H form an
  // orthonormal basis of w^perp.
  Vector v = w;
  v[0] += (w[0] >= 0.0) ? 1.0 : -1.0;
  const double vnorm2 = v.squaredNorm();
  Matrix basis(n, n - 1);
  for (int j = 1; j < n; ++j) {
    Vector col = -(2.0 * v[j] / vnorm2) * v;
    col[j] += 1.0;
    basis.col(j - 1) = col;
  }
  return basis;
}

} // namespace lcbp
