#pragma once

// Scalar closed forms of the distribution, generic over any field type with
// the usual arithmetic operators (std::complex<double>, std::complex<long
// double>, ...). The bicomplex versions in distribution.hpp apply these to
// each idempotent component.

namespace bcml::closed_form {

template <typename T>
T first_moment(const T& a, const T& alpha) {
  const T one(1);
  return one - a * alpha / (a + one);
}

template <typename T>
T second_moment(const T& a, const T& alpha) {
  const T one(1);
  const T s = one + a;
  return T(2) - T(3) * a * alpha / s + a * (a - one) * alpha * alpha / (s * s);
}

template <typename T>
T third_moment(const T& a, const T& alpha) {
  const T one(1);
  const T s = one + a;
  const T alpha2 = alpha * alpha;
  return T(6) - T(11) * a * alpha / s + T(6) * a * (a - one) * alpha2 / (s * s) -
         a * (a * a - T(4) * a + one) * alpha2 * alpha / (s * s * s);
}

template <typename T>
T fourth_moment(const T& a, const T& alpha) {
  const T one(1);
  const T s = one + a;
  const T s2 = s * s;
  const T alpha2 = alpha * alpha;
  const T a2 = a * a;
  return T(24) - T(50) * a * alpha / s + T(35) * a * (a - one) * alpha2 / s2 -
         T(10) * a * (a2 - T(4) * a + one) * alpha2 * alpha / (s2 * s) +
         a * (a2 * a - T(11) * a2 + T(11) * a - one) * alpha2 * alpha2 / (s2 * s2);
}

/// Raw moment of order 0..4; order 0 is the normalization constant 1.
template <typename T>
T raw_moment(int r, const T& a, const T& alpha) {
  switch (r) {
    case 0: return T(1);
    case 1: return first_moment(a, alpha);
    case 2: return second_moment(a, alpha);
    case 3: return third_moment(a, alpha);
    default: return fourth_moment(a, alpha);
  }
}

template <typename T>
T mean(const T& a, const T& alpha) {
  const T one(1);
  return one - a * alpha / (a + one);
}

template <typename T>
T variance(const T& a, const T& alpha) {
  const T one(1);
  const T s = a + one;
  return one - a * alpha / s - a * alpha * alpha / (s * s);
}

/// (1 + a)(1 - t)^(alpha - 1) / (a + (1 - t)^alpha), principal branch.
template <typename T>
T mgf(const T& t, const T& a, const T& alpha) {
  using std::pow;
  const T one(1);
  const T s = one - t;
  return (one + a) * pow(s, alpha - one) / (a + pow(s, alpha));
}

}  // namespace bcml::closed_form
