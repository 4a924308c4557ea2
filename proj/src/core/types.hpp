#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace lcbp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Volume omega_n of the unit ball in R^n.
double unit_ball_volume(int n);

/// Surface area of the unit sphere S^{n-1} in R^n (= n * omega_n).
double sphere_surface_area(int n);

/// Thrown when an argument violates a documented precondition.
class invalid_input : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation cannot produce a meaningful value
/// (degenerate mass, undefined Ball body, non-even input, ...).
class computation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// SplitMix64 step; used to derive independent per-instance seeds.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t index);

} // namespace lcbp
