#include "bcml/mittag_leffler.hpp"

#include <math.h>

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "bcml/gamma.hpp"

namespace bcml {
namespace {

long double log_gamma_real(long double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgammal_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

bool is_real(Complex z) { return z.imag() == 0.0; }

// Term k of the series when both alpha and z are real.
long double real_term(double alpha, double z, int k) {
  if (k == 0) return 1.0L;
  if (z == 0.0) return 0.0L;
  const long double kk = k;
  const long double magnitude =
      std::exp(kk * std::log(std::fabs(static_cast<long double>(z))) -
               log_gamma_real(static_cast<long double>(alpha) * kk + 1.0L));
  return (z < 0.0 && (k % 2) == 1) ? -magnitude : magnitude;
}

Complex complex_term(Complex alpha, Complex z, int k) {
  if (k == 0) return 1.0;
  if (z == Complex{}) return 0.0;
  const double kk = k;
  return std::exp(kk * std::log(z) - log_gamma(alpha * kk + 1.0));
}

template <typename Scalar, typename TermFn>
ComplexEvalResult sum_series(TermFn&& term, const SeriesOptions& opts) {
  Scalar sum{};
  int small_run = 0;
  int k = 0;
  bool rule_met = false;
  bool finite = true;
  while (k < opts.max_terms) {
    const Scalar t = term(k);
    sum += t;
    ++k;
    using std::abs;
    const double sum_mag = static_cast<double>(abs(sum));
    if (!std::isfinite(sum_mag)) {
      finite = false;
      break;
    }
    if (static_cast<double>(abs(t)) < opts.tol * std::max(1.0, sum_mag)) {
      if (++small_run == 3) {
        rule_met = true;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  ComplexEvalResult out;
  out.terms_used = k;
  if constexpr (std::is_same_v<Scalar, long double>) {
    out.value = Complex(static_cast<double>(sum), 0.0);
  } else {
    out.value = sum;
  }
  using std::abs;
  const double scale = std::max(1.0, static_cast<double>(abs(sum)));
  out.error_estimate = finite ? static_cast<double>(abs(term(k))) / scale
                              : std::numeric_limits<double>::infinity();
  if (!std::isfinite(out.error_estimate)) out.error_estimate = std::numeric_limits<double>::infinity();
  out.converged = finite && rule_met && out.error_estimate <= opts.tol;
  return out;
}

void check_arguments(Complex alpha, const SeriesOptions& opts) {
  if (!(alpha.real() > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                fmt::format("Mittag-Leffler order must have positive real part (got {})", alpha.real()));
  }
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::invalid_argument, "series tolerance must be positive");
  if (opts.max_terms < 1) throw Error(ErrorCode::invalid_argument, "max_terms must be at least 1");
}

}  // namespace

Complex mittag_leffler_term(Complex alpha, Complex z, int k) {
  if (is_real(alpha) && is_real(z)) {
    return {static_cast<double>(real_term(alpha.real(), z.real(), k)), 0.0};
  }
  return complex_term(alpha, z, k);
}

ComplexEvalResult mittag_leffler(Complex alpha, Complex z, const SeriesOptions& opts) {
  check_arguments(alpha, opts);
  if (is_real(alpha) && is_real(z)) {
    const double a = alpha.real();
    const double x = z.real();
    return sum_series<long double>([a, x](int k) { return real_term(a, x, k); }, opts);
  }
  return sum_series<Complex>([alpha, z](int k) { return complex_term(alpha, z, k); }, opts);
}

AlphaValidation validate_alpha(const Bicomplex& alpha) {
  const IdempotentPair p = alpha.idempotent();
  AlphaValidation out;
  out.valid = p.first.real() > 0.0 && p.second.real() > 0.0;
  out.diagnostic = fmt::format(
      "|Im_j(alpha)| = {:.17g} {} Re(alpha) = {:.17g}; idempotent Re(alpha1) = {:.17g}, "
      "Re(alpha2) = {:.17g} ({})",
      std::fabs(alpha.x3()), std::fabs(alpha.x3()) < alpha.x0() ? "<" : ">=", alpha.x0(),
      p.first.real(), p.second.real(), out.valid ? "valid" : "both must be positive");
  return out;
}

AlphaParam AlphaParam::make(const Bicomplex& alpha) {
  AlphaValidation v = validate_alpha(alpha);
  if (!v.valid) throw Error(ErrorCode::invalid_parameter, "invalid alpha: " + v.diagnostic);
  return AlphaParam(alpha);
}

EvalResult mittag_leffler(const AlphaParam& alpha, const Bicomplex& xi, const SeriesOptions& opts) {
  const IdempotentPair a = alpha.idempotent();
  const IdempotentPair x = xi.idempotent();
  std::array<ComplexEvalResult, 2> parts;
  const std::array<Complex, 2> orders{a.first, a.second};
  const std::array<Complex, 2> args{x.first, x.second};
  for (int i = 0; i < 2; ++i) {
    try {
      parts[i] = mittag_leffler(orders[i], args[i], opts);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("idempotent component {}: {}", i + 1, e.what()));
    }
  }
  EvalResult out;
  out.value = Bicomplex::from_idempotent({parts[0].value, parts[1].value});
  out.terms_used = {parts[0].terms_used, parts[1].terms_used};
  out.error_estimate = std::max(parts[0].error_estimate, parts[1].error_estimate);
  out.converged = parts[0].converged && parts[1].converged;
  return out;
}

}  // namespace bcml
