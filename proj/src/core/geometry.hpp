#pragma once

#include "core/quadrature.hpp"
#include "core/star_body.hpp"

namespace lcbp {

/// V(K) = (1/n) * integral over S^{n-1} of rho_K^n.
IntegralResult volume(const StarBody& K, const QuadratureConfig& cfg);

/// V_{n-1}(K cap u^perp) = (1/(n-1)) * integral over S^{n-1} cap u^perp of
/// rho_K^{n-1}.
IntegralResult central_section_volume(const StarBody& K, const Vector& u,
                                      const QuadratureConfig& cfg);

/// L_p dual mixed volume
/// V~_{-p}(K, L) = (1/n) * integral of rho_K^{n+p} rho_L^{-p}.
IntegralResult dual_mixed_volume(const StarBody& K, const StarBody& L, double p,
                                 const QuadratureConfig& cfg);

} // namespace lcbp
