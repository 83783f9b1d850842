#include "bcml/distribution.hpp"

#include <fmt/format.h>

#include "bcml/closed_forms.hpp"

namespace bcml {

MLDistParams MLDistParams::make(const Bicomplex& a, const Bicomplex& alpha) {
  if (!is_finite(a) || !is_finite(alpha)) {
    throw Error(ErrorCode::invalid_parameter, "distribution parameters must be finite");
  }
  if (is_null_cone(1.0 + a)) {
    const IdempotentPair s = (1.0 + a).idempotent();
    throw Error(ErrorCode::invalid_parameter,
                fmt::format("1 + a lies in the null cone (|1 + a1| = {:.3g}, |1 + a2| = {:.3g})",
                            std::abs(s.first), std::abs(s.second)));
  }
  return MLDistParams(a, AlphaParam::make(alpha));
}

bool MLDistParams::has_real_components() const {
  const IdempotentPair a = a_.idempotent();
  const IdempotentPair al = alpha_.idempotent();
  return a.first.imag() == 0.0 && a.second.imag() == 0.0 && al.first.imag() == 0.0 &&
         al.second.imag() == 0.0;
}

EvalResult pdf(const Bicomplex& xi, const MLDistParams& p, const SeriesOptions& opts) {
  const Bicomplex a = p.a();
  const Bicomplex argument = -a * pow(xi, p.alpha().value());
  EvalResult series = mittag_leffler(p.alpha(), argument, opts);
  series.value = (1.0 + a) * exp(-xi) * series.value;
  return series;
}

MgfResult mgf(const Bicomplex& t, const MLDistParams& p) {
  const Bicomplex one(1.0);
  const Bicomplex s = one - t;
  if (is_null_cone(s)) {
    throw Error(ErrorCode::zero_divisor, "mgf: 1 - t lies in the null cone");
  }
  const Bicomplex& a = p.a();
  const Bicomplex& alpha = p.alpha().value();
  const Bicomplex s_alpha = pow(s, alpha);
  MgfResult out;
  out.value = (one + a) * pow(s, alpha - one) / (a + s_alpha);

  const IdempotentPair ai = a.idempotent();
  const IdempotentPair si = s_alpha.idempotent();
  out.in_series_region = {std::abs(ai.first) < std::abs(si.first),
                          std::abs(ai.second) < std::abs(si.second)};
  out.analytic_continuation = !(out.in_series_region[0] && out.in_series_region[1]);
  return out;
}

namespace {

void require_invertible_shift(const MLDistParams& p) {
  if (is_null_cone(1.0 + p.a())) {
    throw Error(ErrorCode::zero_divisor, "1 + a lies in the null cone");
  }
}

}  // namespace

Bicomplex moment(int r, const MLDistParams& p) {
  if (r < 0 || r > 4) {
    throw Error(ErrorCode::invalid_argument, fmt::format("moment order must be in 0..4 (got {})", r));
  }
  if (r == 0) return Bicomplex(1.0);
  require_invertible_shift(p);
  return lift(p.a(), p.alpha().value(),
              [r](Complex a, Complex alpha) { return closed_form::raw_moment(r, a, alpha); });
}

Bicomplex mean(const MLDistParams& p) {
  require_invertible_shift(p);
  return lift(p.a(), p.alpha().value(),
              [](Complex a, Complex alpha) { return closed_form::mean(a, alpha); });
}

Bicomplex variance(const MLDistParams& p) {
  require_invertible_shift(p);
  return lift(p.a(), p.alpha().value(),
              [](Complex a, Complex alpha) { return closed_form::variance(a, alpha); });
}

}  // namespace bcml
