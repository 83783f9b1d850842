#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "bcml/error.hpp"

namespace bcml {

using Complex = std::complex<double>;

/// Relative tolerance used to decide membership of the null cone.
inline constexpr double kNullConeTol = 1e-12;

/// Coordinates of a bicomplex number over the idempotent basis:
/// xi = first * e1 + second * e2.
struct IdempotentPair {
  Complex first;
  Complex second;
};

/// x0 + i1 x1 + i2 x2 + j x3, stored as z1 + i2 z2 with z1 = x0 + i1 x1 and
/// z2 = x2 + i1 x3. Values are immutable once built; there is deliberately
/// no operator== (use approx_equal).
class Bicomplex {
 public:
  constexpr Bicomplex() = default;
  constexpr Bicomplex(double x0) : z1_(x0, 0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr Bicomplex(Complex z1, Complex z2) : z1_(z1), z2_(z2) {}

  /// Throws Error(invalid_argument) on non-finite components.
  static Bicomplex make(double x0, double x1, double x2, double x3);

  constexpr Complex z1() const { return z1_; }
  constexpr Complex z2() const { return z2_; }

  constexpr double x0() const { return z1_.real(); }
  constexpr double x1() const { return z1_.imag(); }
  constexpr double x2() const { return z2_.real(); }
  constexpr double x3() const { return z2_.imag(); }

  /// (z1 - i1 z2, z1 + i1 z2)
  constexpr IdempotentPair idempotent() const {
    return {{z1_.real() + z2_.imag(), z1_.imag() - z2_.real()},
            {z1_.real() - z2_.imag(), z1_.imag() + z2_.real()}};
  }

  /// z1 = (xi1 + xi2)/2, z2 = -i1 (xi2 - xi1)/2
  static constexpr Bicomplex from_idempotent(const IdempotentPair& p) {
    const Complex& a = p.first;
    const Complex& b = p.second;
    return {{0.5 * (a.real() + b.real()), 0.5 * (a.imag() + b.imag())},
            {0.5 * (b.imag() - a.imag()), 0.5 * (a.real() - b.real())}};
  }

  constexpr Bicomplex operator-() const { return {-z1_, -z2_}; }

  friend constexpr Bicomplex operator+(const Bicomplex& a, const Bicomplex& b) {
    return {a.z1_ + b.z1_, a.z2_ + b.z2_};
  }
  friend constexpr Bicomplex operator-(const Bicomplex& a, const Bicomplex& b) {
    return {a.z1_ - b.z1_, a.z2_ - b.z2_};
  }
  // (z1 + i2 z2)(w1 + i2 w2) = z1 w1 - z2 w2 + i2 (z1 w2 + z2 w1)
  friend Bicomplex operator*(const Bicomplex& a, const Bicomplex& b) {
    return {a.z1_ * b.z1_ - a.z2_ * b.z2_, a.z1_ * b.z2_ + a.z2_ * b.z1_};
  }
  friend Bicomplex operator/(const Bicomplex& a, const Bicomplex& b);

  Bicomplex& operator+=(const Bicomplex& o) { return *this = *this + o; }
  Bicomplex& operator-=(const Bicomplex& o) { return *this = *this - o; }
  Bicomplex& operator*=(const Bicomplex& o) { return *this = *this * o; }
  Bicomplex& operator/=(const Bicomplex& o) { return *this = *this / o; }

 private:
  Complex z1_{};
  Complex z2_{};
};

inline constexpr Bicomplex kE1 = Bicomplex::from_idempotent({{1.0, 0.0}, {0.0, 0.0}});
inline constexpr Bicomplex kE2 = Bicomplex::from_idempotent({{0.0, 0.0}, {1.0, 0.0}});

constexpr IdempotentPair to_idempotent(const Bicomplex& x) { return x.idempotent(); }
constexpr Bicomplex from_idempotent(const IdempotentPair& p) {
  return Bicomplex::from_idempotent(p);
}
constexpr Bicomplex from_idempotent(Complex first, Complex second) {
  return Bicomplex::from_idempotent({first, second});
}

/// Euclidean norm of (x0, x1, x2, x3). Diagnostic only.
double norm(const Bicomplex& x);

/// True iff min(|xi1|, |xi2|) <= tol * max(1, |xi1|, |xi2|).
bool is_null_cone(const Bicomplex& x, double tol = kNullConeTol);

/// Quotient computed componentwise over the idempotent basis. Throws
/// Error(zero_divisor) naming the vanishing component when the divisor is in
/// the null cone.
Bicomplex divide(const Bicomplex& num, const Bicomplex& den);

/// Principal-branch power, componentwise: exp(alpha_k Log xi_k).
/// A zero base component is allowed only against an exponent component with
/// positive real part (result 0); otherwise Error(domain).
Bicomplex pow(const Bicomplex& base, const Bicomplex& exponent);

Bicomplex exp(const Bicomplex& x);

/// Principal-branch logarithm; Error(domain) if a component is zero.
Bicomplex log(const Bicomplex& x);

/// Applies a complex function to both idempotent components.
template <typename F>
Bicomplex lift(const Bicomplex& x, F&& f) {
  const IdempotentPair p = x.idempotent();
  return Bicomplex::from_idempotent({f(p.first), f(p.second)});
}

template <typename F>
Bicomplex lift(const Bicomplex& x, const Bicomplex& y, F&& f) {
  const IdempotentPair p = x.idempotent();
  const IdempotentPair q = y.idempotent();
  return Bicomplex::from_idempotent({f(p.first, q.first), f(p.second, q.second)});
}

/// norm(a - b) <= rel_tol * max(1, norm(b))
bool approx_equal(const Bicomplex& a, const Bicomplex& b, double rel_tol);

bool is_finite(const Bicomplex& x);

}  // namespace bcml
