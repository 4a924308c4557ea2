#pragma once

#include "core/types.hpp"

#include <cstdint>
#include <string>

namespace lcbp {

/// Deterministic node/weight set on the unit sphere S^{n-1}.
///
/// Schemes by dimension:
///   n = 1  the two points {+1, -1}, weight 1 each (S^0 has measure 2)
///   n = 2  uniform angular grid (trapezoidal; spectrally accurate for
///          smooth periodic integrands)
///   n = 3  Fibonacci spiral, equal weights 4*pi/N
///   n >= 4 seeded pseudo-random unit vectors, equal weights S_{n-1}/N
///
/// Weights always sum to the surface measure of S^{n-1}, so
/// sum_i w_i h(u_i) approximates the surface integral of h.
struct DirectionGrid {
  int dim = 0;
  Matrix nodes;   // dim x count, unit columns
  Vector weights; // count entries, positive
  std::string scheme;
  std::uint64_t seed = 0;

  int count() const { return static_cast<int>(weights.size()); }

  static DirectionGrid make(int dim, int count, std::uint64_t seed = 0);
};

/// Default node count used by the quadrature engines for a sphere of the
/// given ambient dimension.
int default_sphere_count(int dim);

/// Orthonormal basis of u^perp as the columns of an n x (n-1) matrix,
/// built from a single Householder reflection mapping e_1 to u.  The
/// construction is deterministic, so repeated calls with the same u give
/// bit-identical frames.
Matrix orthonormal_completion(const Vector& u);

} // namespace lcbp
