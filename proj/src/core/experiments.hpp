#pragma once

#include "core/intersection.hpp"

#include <random>
#include <string>
#include <vector>

namespace lcbp {

/// Named lhs/rhs/margin/pass record emitted by every verification sweep.
/// Sign convention: margin = rhs - lhs, pass when margin >= -tolerance.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool equality_expected = false;
  std::string details;
};

InequalityReport make_report(const std::string& name, double lhs, double rhs,
                             double tolerance, bool equality_expected = false,
                             const std::string& details = "");

struct BPVerdict {
  int dim = 0;
  bool domination = false;
  bool mass_ordered = false;
  bool selfdual_ordered = false;
  bool entropy_ordered = false;
  bool consistent_with_theorem = false;
  double worst_section_margin = 0.0; // min over the grid of A_g - A_f
  Vector worst_direction;
  double mass_f = 0.0, mass_g = 0.0;
  double selfdual_f = 0.0, selfdual_g = 0.0;
  double entropy_f_scaled = 0.0, entropy_g_scaled = 0.0;
  double rescale = 1.0; // max(1/J(f), 1/J(g))
  double tolerance = 0.0;
};

/// Section-domination hypothesis over the grid, then the three conclusions
/// (mass, self dual mixed volume, entropy after rescaling).  Inputs must be
/// even; non-even inputs are rejected because symmetrization raises every
/// central section while raising the self dual mixed volume, which reverses
/// the conclusions.
BPVerdict bp_check(const ScalarField& f, const ScalarField& g,
                   const DirectionGrid& grid, const QuadratureConfig& cfg);

/// Closed forms for f = exp(-||x||_{aK}): central section, total mass,
/// self dual mixed volume and entropy.  V(K) and the sections of K come
/// from the geometric quadratures (exact for balls).
struct ClosedFormRecord {
  double mass = 0.0;      // a^n Gamma(n+1) V(K)
  double selfdual = 0.0;  // a^n n Gamma(n+1) V(K)
  double entropy = 0.0;   // -a^n Gamma(n+1) V(K) [n + log Gamma(n+1) + log(a^n V(K))]
  std::function<double(const Vector&)> section; // a^{n-1} Gamma(n) V_{n-1}(K cap u^perp)
};
ClosedFormRecord closed_form_oracle(const StarBody& K, double a,
                                    const QuadratureConfig& cfg);

/// Central section V_{n-1}(Q cap u^perp) of the unit cube [-1/2, 1/2]^n by
/// the one-dimensional Fourier-slice integral
///   A(u) = (1/pi) Int_0^inf prod_j sinc(u_j s / 2) ds.
double cube_central_section(const Vector& u);

struct CubeBallResult {
  BPVerdict verdict;
  double ball_radius = 0.0;
  double ball_volume = 0.0;
  double ball_volume_error = 0.0;
  double max_cube_section = 0.0;
  Vector max_section_direction;
  int directions = 0;
};

/// The n >= 10 negative demonstration: unit cube vs the ball whose central
/// sections all equal sqrt(2).  Sections dominate while the ball volume
/// drops below 1.
CubeBallResult bp_counterexample_cube_ball(int dim, int directions,
                                           const QuadratureConfig& cfg);

struct NonEvenDemo {
  double epsilon = 0.0;       // mixing weight of the even substitute
  double selfdual_f = 0.0;    // after the potential shift
  double selfdual_sym = 0.0;  // of the even part
  double selfdual_g = 0.0;    // of the substitute
  double min_section_gap = 0.0; // min over directions of A_f - A_g (> 0)
  std::vector<InequalityReport> reports;
};

/// Why evenness is necessary: for non-even f builds the even g with
/// strictly smaller sections and strictly larger self dual mixed volume.
NonEvenDemo demo_noneven_necessity(const ScalarField& f, const QuadratureConfig& cfg);

// ---------------------------------------------------------------------------
// Seeded generators shared by the sweeps and the tests
// ---------------------------------------------------------------------------

Matrix random_orthogonal(int n, std::mt19937_64& rng);
Matrix random_well_conditioned(int n, std::mt19937_64& rng, double cond_max = 4.0);

ScalarField random_even_log_concave(int n, std::mt19937_64& rng);
ScalarField random_noneven_log_concave(int n, std::mt19937_64& rng);
StarBody random_star_body(int n, std::mt19937_64& rng);

/// Even log-concave pair with section domination A_f <= A_g everywhere
/// (pointwise-ordered composites and analytically dominating Gaussian pairs).
std::pair<ScalarField, ScalarField> random_dominating_pair(int n,
                                                           std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Inequality sweeps (the acceptance suite calls these with pinned counts)
// ---------------------------------------------------------------------------

std::vector<InequalityReport> sweep_dual_minkowski_bodies(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg);
std::vector<InequalityReport> sweep_dual_minkowski_functional(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg);
std::vector<InequalityReport> sweep_busemann_geometric(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg);
std::vector<InequalityReport> sweep_busemann_functional(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg);
std::vector<InequalityReport> sweep_moment_monotonicity(int count, std::uint64_t seed);
std::vector<InequalityReport> sweep_ball_body_inclusion(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg);
std::vector<InequalityReport> sweep_symmetrization(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg);
std::vector<InequalityReport> sweep_bp_positive(
    int n, int count, std::uint64_t seed, const QuadratureConfig& cfg);
std::vector<InequalityReport> bp_negative_reports(int dim, int directions,
                                                  const QuadratureConfig& cfg);

struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<InequalityReport> reports;
  bool all_pass = false;
};

/// Suite ids: dual-minkowski, busemann-intersection, moments, inclusion,
/// symmetrization, bp-positive, bp-negative, all.
SuiteResult run_suite(const std::string& name, const QuadratureConfig& cfg,
                      std::uint64_t seed);

/// Deterministic JSON / CSV serializations of a suite result.
std::string suite_to_json(const SuiteResult& suite, const QuadratureConfig& cfg);
std::string reports_to_csv(const std::vector<InequalityReport>& reports);

} // namespace lcbp
