#pragma once

#include <array>

#include "bcml/bicomplex.hpp"
#include "bcml/mittag_leffler.hpp"

namespace bcml {

/// Parameters (a, alpha) of the bicomplex Mittag-Leffler distribution with
/// density F(xi) = (1 + a) e^{-xi} E_alpha(-a xi^alpha).
///
/// a may be any bicomplex number for which 1 + a is invertible; alpha must
/// satisfy |Im_j(alpha)| < Re(alpha).
class MLDistParams {
 public:
  /// Throws Error(invalid_parameter) when 1 + a lies in the null cone or
  /// alpha is invalid.
  static MLDistParams make(const Bicomplex& a, const Bicomplex& alpha);

  const Bicomplex& a() const { return a_; }
  const AlphaParam& alpha() const { return alpha_; }

  /// Both a and alpha have purely real idempotent components.
  bool has_real_components() const;

 private:
  MLDistParams(const Bicomplex& a, const AlphaParam& alpha) : a_(a), alpha_(alpha) {}
  Bicomplex a_;
  AlphaParam alpha_;
};

/// (1 + a) exp(-xi) E_alpha(-a xi^alpha), componentwise. Positivity is not
/// checked: the density is bicomplex-valued.
EvalResult pdf(const Bicomplex& xi, const MLDistParams& p, const SeriesOptions& opts = {});

struct MgfResult {
  Bicomplex value;
  /// |a_k / (1 - t_k)^alpha_k| < 1 per idempotent component.
  std::array<bool, 2> in_series_region{};
  /// Set when either component lies outside the region where the moment
  /// series sums; the closed form is then its analytic continuation.
  bool analytic_continuation = false;
};

/// (1 + a)(1 - t)^(alpha - 1) / (a + (1 - t)^alpha). Throws Error(zero_divisor)
/// if 1 - t or the denominator lies in the null cone.
MgfResult mgf(const Bicomplex& t, const MLDistParams& p);

/// Raw moment of order r in 0..4. Throws Error(invalid_argument) otherwise.
Bicomplex moment(int r, const MLDistParams& p);

Bicomplex mean(const MLDistParams& p);
Bicomplex variance(const MLDistParams& p);

}  // namespace bcml
