#pragma once

#include <array>

#include "bcml/bicomplex.hpp"
#include "bcml/distribution.hpp"

namespace bcml {

/// Margin below |a| = 1 inside which the term-by-term moment series is summed.
inline constexpr double kSeriesRegionMargin = 1e-3;

/// (1 + a) sum_k (-a)^k (alpha k + 1)(alpha k + 2)...(alpha k + r), summed per
/// idempotent component with the three-small-terms stopping rule.
///
/// The gamma ratio Gamma(alpha k + r + 1) / Gamma(alpha k + 1) is expanded
/// as the explicit product, so this check is independent of the closed forms
/// but shares that cancellation step with their derivation.
///
/// Throws Error(out_of_region) when max(|a1|, |a2|) >= 1 - kSeriesRegionMargin
/// and Error(invalid_argument) for r outside 0..4.
Bicomplex moment_series_oracle(int r, const MLDistParams& p, double tol = 1e-15,
                               int max_terms = 200000);

struct QuadratureResult {
  Bicomplex value;
  /// Largest per-component error estimate, quadrature plus truncated tail.
  double error_estimate = 0.0;
  /// Upper limits [0, U] used for the two components.
  std::array<double, 2> upper_limit{};
  bool converged = false;
};

/// int_0^inf xi^r F(xi) d xi, integrated along the real ray separately for
/// each idempotent component (adaptive Gauss-Kronrod on [0, U], U chosen from
/// an analytic tail bound).
///
/// Requires real idempotent components with a_k >= 0 and alpha_k in (0, 2];
/// otherwise Error(unsupported_by_oracle). Where cancellation in the
/// alternating Mittag-Leffler series would swamp long double the integrand is
/// summed in 100-digit arithmetic; when even that cannot reach tol the call
/// also raises Error(unsupported_by_oracle).
QuadratureResult moment_quadrature_oracle(int r, const MLDistParams& p, double tol = 1e-9);

/// int_0^inf e^{xi t} F(xi) d xi for real t < 1 (Error(divergent_integral)
/// otherwise); same parameter restrictions as moment_quadrature_oracle.
QuadratureResult mgf_oracle(double t, const MLDistParams& p, double tol = 1e-9);

/// Central-difference estimates of M'(0), M''(0), M'''(0), M''''(0). Five
/// point stencils for the first two derivatives, seven point for the others.
/// The MGF is evaluated per idempotent component in extended precision so
/// that the h^-4 roundoff amplification stays below the truncation error.
///
/// Throws Error(invalid_argument) for h outside [1e-4, 1e-2] and
/// Error(stencil) if a stencil point hits a singularity of the MGF.
std::array<Bicomplex, 4> finite_difference_moments(const MLDistParams& p, double h = 1e-3);

}  // namespace bcml
