#include "bcml/bicomplex.hpp"

#include <algorithm>
#include <string>

namespace bcml {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::zero_divisor: return "zero-divisor";
    case ErrorCode::domain: return "domain";
    case ErrorCode::pole: return "pole";
    case ErrorCode::out_of_region: return "out-of-region";
    case ErrorCode::unsupported_by_oracle: return "unsupported-by-oracle";
    case ErrorCode::divergent_integral: return "divergent-integral";
    case ErrorCode::stencil: return "stencil";
  }
  return "unknown";
}

Bicomplex Bicomplex::make(double x0, double x1, double x2, double x3) {
  if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(x2) || !std::isfinite(x3)) {
    throw Error(ErrorCode::invalid_argument, "bicomplex components must be finite");
  }
  return {{x0, x1}, {x2, x3}};
}

double norm(const Bicomplex& x) {
  return std::hypot(std::hypot(x.x0(), x.x1()), std::hypot(x.x2(), x.x3()));
}

bool is_finite(const Bicomplex& x) {
  return std::isfinite(x.x0()) && std::isfinite(x.x1()) && std::isfinite(x.x2()) &&
         std::isfinite(x.x3());
}

namespace {

bool component_vanishes(const IdempotentPair& p, double tol, int* which) {
  const double m1 = std::abs(p.first);
  const double m2 = std::abs(p.second);
  const double scale = std::max({1.0, m1, m2});
  if (m1 <= tol * scale) {
    if (which) *which = 1;
    return true;
  }
  if (m2 <= tol * scale) {
    if (which) *which = 2;
    return true;
  }
  return false;
}

Complex pow_component(Complex base, Complex exponent, int index) {
  if (base == Complex{}) {
    if (exponent.real() > 0.0) return {};
    throw Error(ErrorCode::domain,
                "power: idempotent component xi" + std::to_string(index) +
                    " of the base is zero and the exponent has non-positive real part");
  }
  return std::exp(exponent * std::log(base));
}

}  // namespace

bool is_null_cone(const Bicomplex& x, double tol) {
  return component_vanishes(x.idempotent(), tol, nullptr);
}

Bicomplex divide(const Bicomplex& num, const Bicomplex& den) {
  const IdempotentPair d = den.idempotent();
  int which = 0;
  if (component_vanishes(d, kNullConeTol, &which)) {
    throw Error(ErrorCode::zero_divisor, "division by a null-cone element: idempotent component xi" +
                                             std::to_string(which) + " of the divisor vanishes");
  }
  const IdempotentPair n = num.idempotent();
  return Bicomplex::from_idempotent({n.first / d.first, n.second / d.second});
}

Bicomplex operator/(const Bicomplex& a, const Bicomplex& b) { return divide(a, b); }

Bicomplex pow(const Bicomplex& base, const Bicomplex& exponent) {
  const IdempotentPair b = base.idempotent();
  const IdempotentPair e = exponent.idempotent();
  return Bicomplex::from_idempotent({pow_component(b.first, e.first, 1),
                                     pow_component(b.second, e.second, 2)});
}

Bicomplex exp(const Bicomplex& x) {
  return lift(x, [](Complex z) { return std::exp(z); });
}

Bicomplex log(const Bicomplex& x) {
  const IdempotentPair p = x.idempotent();
  if (p.first == Complex{} || p.second == Complex{}) {
    throw Error(ErrorCode::domain, "logarithm of a null-cone element");
  }
  return Bicomplex::from_idempotent({std::log(p.first), std::log(p.second)});
}

bool approx_equal(const Bicomplex& a, const Bicomplex& b, double rel_tol) {
  return norm(a - b) <= rel_tol * std::max(1.0, norm(b));
}

}  // namespace bcml
