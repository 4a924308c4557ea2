#include "core/types.hpp"

#include <cmath>
#include <numbers>

namespace lcbp {

double unit_ball_volume(int n) {
  if (n < 0) throw invalid_input("unit_ball_volume: dimension must be >= 0");
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(1.0 + 0.5 * n);
}

double sphere_surface_area(int n) {
  if (n < 1) throw invalid_input("sphere_surface_area: dimension must be >= 1");
  return n * unit_ball_volume(n);
}

std::uint64_t split_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace lcbp
