#include "bcml/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>

#include "bcml/closed_forms.hpp"

namespace bcml {
namespace {

void check_order(int r) {
  if (r < 0 || r > 4) {
    throw Error(ErrorCode::invalid_argument, fmt::format("moment order must be in 0..4 (got {})", r));
  }
}

// ---------------------------------------------------------------------------
// Series oracle

Complex sum_moment_series(int r, Complex a, Complex alpha, double tol, int max_terms) {
  const Complex minus_a = -a;
  Complex power = 1.0;  // (-a)^k
  Complex sum{};
  int small_run = 0;
  for (int k = 0; k < max_terms; ++k) {
    Complex rising = 1.0;
    const Complex ak = alpha * static_cast<double>(k);
    for (int j = 1; j <= r; ++j) rising *= ak + static_cast<double>(j);
    const Complex term = power * rising;
    sum += term;
    if (std::abs(term) < tol * std::max(1.0, std::abs(sum))) {
      if (++small_run == 3) return (1.0 + a) * sum;
    } else {
      small_run = 0;
    }
    power *= minus_a;
  }
  throw Error(ErrorCode::out_of_region,
              fmt::format("moment series did not converge within {} terms", max_terms));
}

// ---------------------------------------------------------------------------
// Quadrature oracle

struct RealComponent {
  double a;
  double alpha;
};

std::array<RealComponent, 2> real_components(const MLDistParams& p) {
  if (!p.has_real_components()) {
    throw Error(ErrorCode::unsupported_by_oracle,
                "quadrature oracle needs real idempotent components of a and alpha");
  }
  const IdempotentPair a = p.a().idempotent();
  const IdempotentPair al = p.alpha().idempotent();
  std::array<RealComponent, 2> out{{{a.first.real(), al.first.real()},
                                    {a.second.real(), al.second.real()}}};
  for (const auto& c : out) {
    if (c.a < 0.0 || !(c.alpha > 0.0) || c.alpha > 2.0) {
      throw Error(ErrorCode::unsupported_by_oracle,
                  fmt::format("quadrature oracle needs a_k >= 0 and alpha_k in (0, 2] (got a_k = "
                              "{}, alpha_k = {})",
                              c.a, c.alpha));
    }
  }
  return out;
}

struct ComponentIntegral {
  double value = 0.0;
  double error = 0.0;
  double upper = 0.0;
  bool converged = false;
};

// |E_alpha(-y)| <= 1 for y >= 0 and alpha in (0, 2]; doubled for margin.
constexpr double kMittagLefflerBound = 2.0;

// Smallest U (on a 0.5 grid) with the tail of |x^r e^{-s x} (1+a) E| below
// target. Uses int_U^inf x^r e^{-sx} dx <= 2 U^r e^{-sU} / s for U >= 2r/s.
double tail_cutoff(int r, double s, double a, double target, double* tail) {
  double upper = std::max(1.0, 2.0 * r / s);
  auto bound = [&](double u) {
    return (1.0 + a) * kMittagLefflerBound * 2.0 * std::pow(u, r) * std::exp(-s * u) / s;
  };
  while (bound(upper) >= target) upper += 0.5;
  *tail = bound(upper);
  return upper;
}

// Roundoff of the alternating series for E_alpha(-y) scales with the sum of
// the term magnitudes, E_alpha(y). Relative unit roundoff of each working
// precision, with slack for the per-term error growth.
constexpr double kLongDoubleNoise = 1e-18;
constexpr double kExtendedNoise = 1e-97;
constexpr int kNoiseSamples = 64;

using Extended = boost::multiprecision::cpp_bin_float_100;

// E_alpha(-y) for real y >= 0 in 100-digit arithmetic, with the reciprocal
// gamma values cached (alpha is fixed for one component integral).
class ExtendedMittagLeffler {
 public:
  explicit ExtendedMittagLeffler(double alpha) : alpha_(alpha) {}

  double operator()(double y) {
    const Extended minus_y = -Extended(y);
    const Extended tol("1e-90");
    Extended power = 1, sum = 0;
    int small_run = 0;
    for (std::size_t k = 0; k < kMaxTerms; ++k) {
      if (k == inv_gamma_.size()) {
        inv_gamma_.push_back(1 / boost::math::tgamma(alpha_ * static_cast<int>(k) + 1));
      }
      const Extended term = power * inv_gamma_[k];
      sum += term;
      if (abs(term) < tol * std::max(Extended(1), abs(sum))) {
        if (++small_run == 3) return sum.convert_to<double>();
      } else {
        small_run = 0;
      }
      power *= minus_y;
    }
    converged_ = false;
    return sum.convert_to<double>();
  }

  bool converged() const { return converged_; }

 private:
  static constexpr std::size_t kMaxTerms = 20000;
  Extended alpha_;
  std::vector<Extended> inv_gamma_;
  bool converged_ = true;
};

// Largest value of (1+a) x^r e^{-s x} E_alpha(a x^alpha) over samples of
// [0, U]; infinite when E_alpha overflows.
double magnitude_envelope(int r, double s, const RealComponent& c, double upper) {
  double worst = 0.0;
  for (int i = 1; i <= kNoiseSamples; ++i) {
    const double x = upper * i / kNoiseSamples;
    const ComplexEvalResult e =
        mittag_leffler(Complex(c.alpha, 0.0), Complex(c.a * std::pow(x, c.alpha), 0.0));
    const double v = (1.0 + c.a) * std::pow(x, r) * std::exp(-s * x) * e.value.real();
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, v);
  }
  return worst;
}

// int_0^U (1+a) x^r e^{-s x} E_alpha(-a x^alpha) dx
ComponentIntegral integrate_component(int r, double s, const RealComponent& c, double tol) {
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  constexpr unsigned kMaxDepth = 20;
  const SeriesOptions series{1e-15, kDefaultMaxTerms};

  ComponentIntegral out;
  double tail = 0.0;
  out.upper = tail_cutoff(r, s, c.a, tol / 10.0, &tail);

  const double envelope = magnitude_envelope(r, s, c, out.upper);
  const bool extended = envelope * out.upper * kLongDoubleNoise > tol / 10.0;
  if (extended && !(envelope * out.upper * kExtendedNoise <= tol / 10.0)) {
    throw Error(ErrorCode::unsupported_by_oracle,
                fmt::format("integrand loses too much precision to series cancellation "
                            "(a_k = {}, alpha_k = {}, upper limit {})",
                            c.a, c.alpha, out.upper));
  }

  bool series_ok = true;
  ExtendedMittagLeffler wide(c.alpha);
  auto integrand = [&](double x) {
    if (x == 0.0) return r == 0 ? (1.0 + c.a) : 0.0;
    const double y = c.a * std::pow(x, c.alpha);
    double e = 0.0;
    if (extended) {
      e = wide(y);
    } else {
      const ComplexEvalResult ml = mittag_leffler(Complex(c.alpha, 0.0), Complex(-y, 0.0), series);
      if (!ml.converged) series_ok = false;
      e = ml.value.real();
    }
    return (1.0 + c.a) * std::pow(x, r) * std::exp(-s * x) * e;
  };

  // On [0, 1] substitute x = u^4: the x^(alpha k) terms become u^(4 alpha k),
  // which removes the endpoint singularity for alpha a multiple of 1/4 and
  // softens it otherwise.
  double err_head = 0.0;
  const double head = Quadrature::integrate(
      [&](double u) {
        const double u3 = u * u * u;
        return 4.0 * u3 * integrand(u3 * u);
      },
      0.0, 1.0, kMaxDepth, tol, &err_head);
  double err_body = 0.0;
  const double body = Quadrature::integrate(integrand, 1.0, out.upper, kMaxDepth, tol, &err_body);

  const double roundoff = envelope * out.upper * (extended ? kExtendedNoise : kLongDoubleNoise);
  out.value = head + body;
  out.error = err_head + err_body + tail + roundoff;
  out.converged = series_ok && wide.converged() && std::isfinite(out.value) &&
                  out.error <= 10.0 * tol * std::max(1.0, std::abs(out.value));
  return out;
}

QuadratureResult integrate_components(int r, double s, const MLDistParams& p, double tol) {
  const auto comps = real_components(p);
  std::array<ComponentIntegral, 2> parts;
  parts[0] = integrate_component(r, s, comps[0], tol);
  if (comps[1].a == comps[0].a && comps[1].alpha == comps[0].alpha) {
    parts[1] = parts[0];
  } else {
    parts[1] = integrate_component(r, s, comps[1], tol);
  }
  QuadratureResult out;
  out.value = Bicomplex::from_idempotent({parts[0].value, parts[1].value});
  out.error_estimate = std::max(parts[0].error, parts[1].error);
  out.upper_limit = {parts[0].upper, parts[1].upper};
  out.converged = parts[0].converged && parts[1].converged;
  return out;
}

// ---------------------------------------------------------------------------
// Finite differences

using ComplexLD = std::complex<long double>;

ComplexLD mgf_component(long double t, ComplexLD a, ComplexLD alpha) {
  const ComplexLD one(1.0L);
  const ComplexLD s = one - t;
  const ComplexLD den = a + std::pow(s, alpha);
  if (std::abs(s) == 0.0L || std::abs(den) <= 1e-12L * std::max(1.0L, std::abs(a))) {
    throw Error(ErrorCode::stencil, fmt::format("stencil point t = {} hits an mgf singularity",
                                                static_cast<double>(t)));
  }
  const ComplexLD m = closed_form::mgf(ComplexLD(t), a, alpha);
  if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
    throw Error(ErrorCode::stencil, fmt::format("mgf is not finite at stencil point t = {}",
                                                static_cast<double>(t)));
  }
  return m;
}

std::array<Complex, 4> stencil_derivatives(ComplexLD a, ComplexLD alpha, long double h) {
  std::array<ComplexLD, 7> m;  // m[j + 3] = M(j h)
  for (int j = -3; j <= 3; ++j) m[j + 3] = mgf_component(j * h, a, alpha);
  auto at = [&](int j) { return m[j + 3]; };
  const long double h2 = h * h;
  const ComplexLD d1 = (-at(2) + 8.0L * at(1) - 8.0L * at(-1) + at(-2)) / (12.0L * h);
  const ComplexLD d2 =
      (-at(2) + 16.0L * at(1) - 30.0L * at(0) + 16.0L * at(-1) - at(-2)) / (12.0L * h2);
  const ComplexLD d3 =
      (-at(3) + 8.0L * at(2) - 13.0L * at(1) + 13.0L * at(-1) - 8.0L * at(-2) + at(-3)) /
      (8.0L * h2 * h);
  const ComplexLD d4 = (-at(3) + 12.0L * at(2) - 39.0L * at(1) + 56.0L * at(0) -
                        39.0L * at(-1) + 12.0L * at(-2) - at(-3)) /
                       (6.0L * h2 * h2);
  auto narrow = [](ComplexLD z) {
    return Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  };
  return {narrow(d1), narrow(d2), narrow(d3), narrow(d4)};
}

}  // namespace

Bicomplex moment_series_oracle(int r, const MLDistParams& p, double tol, int max_terms) {
  check_order(r);
  const IdempotentPair a = p.a().idempotent();
  const double largest = std::max(std::abs(a.first), std::abs(a.second));
  if (largest >= 1.0 - kSeriesRegionMargin) {
    throw Error(ErrorCode::out_of_region,
                fmt::format("moment series needs max(|a1|, |a2|) < {} (got {})",
                            1.0 - kSeriesRegionMargin, largest));
  }
  const IdempotentPair al = p.alpha().idempotent();
  return Bicomplex::from_idempotent({sum_moment_series(r, a.first, al.first, tol, max_terms),
                                     sum_moment_series(r, a.second, al.second, tol, max_terms)});
}

QuadratureResult moment_quadrature_oracle(int r, const MLDistParams& p, double tol) {
  check_order(r);
  return integrate_components(r, 1.0, p, tol);
}

QuadratureResult mgf_oracle(double t, const MLDistParams& p, double tol) {
  if (!(t < 1.0)) {
    throw Error(ErrorCode::divergent_integral,
                fmt::format("mgf integral diverges for t >= 1 (got t = {})", t));
  }
  return integrate_components(0, 1.0 - t, p, tol);
}

std::array<Bicomplex, 4> finite_difference_moments(const MLDistParams& p, double h) {
  if (!(h >= 1e-4 && h <= 1e-2)) {
    throw Error(ErrorCode::invalid_argument,
                fmt::format("finite-difference step must lie in [1e-4, 1e-2] (got {})", h));
  }
  const IdempotentPair a = p.a().idempotent();
  const IdempotentPair al = p.alpha().idempotent();
  auto widen = [](Complex z) { return ComplexLD(z.real(), z.imag()); };
  const auto first = stencil_derivatives(widen(a.first), widen(al.first), h);
  const auto second = stencil_derivatives(widen(a.second), widen(al.second), h);
  std::array<Bicomplex, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = Bicomplex::from_idempotent({first[i], second[i]});
  return out;
}

}  // namespace bcml
