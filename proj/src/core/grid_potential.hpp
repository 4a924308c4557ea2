#pragma once

#include "core/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace lcbp {

/// Extended-real potential tabulated on an axis-aligned lattice (n <= 3).
/// +inf entries mark points outside dom(phi); at least one value must be
/// finite (properness).
struct GridPotential {
  int dim = 0;
  Vector box_lo, box_hi;
  std::vector<int> resolution;     // nodes per axis, >= 2
  std::vector<double> values;      // row-major, axis 0 slowest

  std::size_t size() const;
  double spacing(int axis) const;
  double coordinate(int axis, int index) const;
  std::size_t flat_index(const std::vector<int>& idx) const;
  double value_at(const std::vector<int>& idx) const;

  bool proper() const;

  static GridPotential tabulate(const Vector& lo, const Vector& hi,
                                const std::vector<int>& resolution,
                                const std::function<double(const Vector&)>& fn);
};

/// Discrete Legendre-Fenchel conjugate.  The dual box is chosen from the
/// finite-difference slope range of the input with a 10% margin; per-axis
/// sweeps use a linear-time lower-envelope pass on discretely convex lines
/// and the O(N^2) direct maximization otherwise.
GridPotential legendre_transform(const GridPotential& phi);

/// Conjugate tabulated on an explicit target box (same per-axis resolution
/// conventions as the input).
GridPotential legendre_transform_to(const GridPotential& phi, const Vector& lo,
                                    const Vector& hi,
                                    const std::vector<int>& resolution);

/// Exhaustive lattice inf-convolution.  Both inputs must share the same box
/// and resolution, and the lattice must contain the origin so that node
/// differences land on nodes.
GridPotential infimal_convolution(const GridPotential& phi, const GridPotential& psi);

/// (phi t)(x) = t phi(x/t): rescales the box, scales the values; exact.
GridPotential right_scalar_mult(const GridPotential& phi, double t);

/// phi + t psi on a shared lattice.
GridPotential harmonic_combination_grid(const GridPotential& phi,
                                        const GridPotential& psi, double t);

/// Largest violation of midpoint convexity along lattice lines
/// (max over axes and interior nodes of 2 v[i] - v[i-1] - v[i+1]).
double midpoint_convexity_violation(const GridPotential& phi);

/// CSV round trip: "i0,...,value" rows with a header; "+inf" literal allowed.
void export_grid_csv(const GridPotential& phi, const std::string& path);
GridPotential import_grid_csv(const std::string& path);

} // namespace lcbp
