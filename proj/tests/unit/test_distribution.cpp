#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bcml/closed_forms.hpp"
#include "bcml/distribution.hpp"

namespace bcml {
namespace {

MLDistParams params(double a, double alpha) { return MLDistParams::make(Bicomplex(a), Bicomplex(alpha)); }

void expect_real(const Bicomplex& x, double want, double tol) {
  EXPECT_NEAR(x.x0(), want, tol);
  EXPECT_NEAR(x.x1(), 0.0, tol);
  EXPECT_NEAR(x.x2(), 0.0, tol);
  EXPECT_NEAR(x.x3(), 0.0, tol);
}

// Random parameter point: idempotent |a_k| < 0.9, Re(alpha_k) in (0.1, 2].
MLDistParams random_params(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto disk = [&] { return std::polar(0.9 * u(gen), 2.0 * std::numbers::pi * u(gen)); };
  auto order = [&] { return Complex(0.1 + 1.9 * (1.0 - u(gen)), u(gen) - 0.5); };
  const Complex a1 = disk(), a2 = disk(), al1 = order(), al2 = order();
  return MLDistParams::make(from_idempotent(a1, a2), from_idempotent(al1, al2));
}

TEST(Params, Validation) {
  EXPECT_NO_THROW(params(0.5, 0.5));
  try {
    params(-1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_parameter);
  }
  // 1 + a = 2 e2 is a zero divisor even though a is not -1.
  EXPECT_THROW(MLDistParams::make(-1.0 * kE1 + 1.0 * kE2, Bicomplex(1.0)), Error);
  EXPECT_THROW(params(0.5, 0.0), Error);
  EXPECT_THROW(MLDistParams::make(Bicomplex(0.5), Bicomplex::make(0.5, 0, 0, 0.7)), Error);
  EXPECT_TRUE(params(0.5, 0.5).has_real_components());
  EXPECT_TRUE(MLDistParams::make(Bicomplex::make(0.5, 0, 0, 0.2), Bicomplex(1.0)).has_real_components());
  EXPECT_FALSE(MLDistParams::make(Bicomplex::make(0.5, 0.1, 0, 0), Bicomplex(1.0)).has_real_components());
}

TEST(Pdf, DegeneratesToExponentialWhenAIsZero) {
  for (double alpha : {0.25, 1.0, 1.7}) {
    for (double x : {0.0, 0.5, 3.0}) {
      expect_real(pdf(Bicomplex(x), params(0.0, alpha)).value, std::exp(-x), 1e-15);
    }
  }
}

TEST(Pdf, UnitOrderIsExponentialDensity) {
  // Reference: 1.5 e^{-1.5}.
  const EvalResult r = pdf(Bicomplex(1.0), params(0.5, 1.0));
  EXPECT_TRUE(r.converged);
  expect_real(r.value, 0.33469524022264474340, 1e-15);
  for (int i = 0; i < 50; ++i) {
    const double x = 10.0 * i / 49.0;
    for (double a : {0.1, 0.5, 0.8}) {
      const double want = (1.0 + a) * std::exp(-(1.0 + a) * x);
      const Bicomplex got = pdf(Bicomplex(x), params(a, 1.0)).value;
      EXPECT_LE(std::fabs(got.x0() - want), 1e-10 * want) << "a=" << a << " x=" << x;
    }
  }
}

TEST(Pdf, ComponentwiseExponentialReduction) {
  const Bicomplex xi = 2.0 * kE1 + 3.0 * kE2;
  const IdempotentPair p = pdf(xi, params(0.3, 1.0)).value.idempotent();
  EXPECT_NEAR(p.first.real(), 1.3 * std::exp(-1.3 * 2.0), 1e-14);
  EXPECT_NEAR(p.second.real(), 1.3 * std::exp(-1.3 * 3.0), 1e-14);
  EXPECT_NEAR(p.first.imag(), 0.0, 1e-15);
}

TEST(Pdf, PositivityIsNotRequired) {
  // E_2(-a x^2) = cos(sqrt(a) x) turns negative.
  const Bicomplex v = pdf(Bicomplex(3.0), params(0.8, 2.0)).value;
  EXPECT_LT(v.x0(), 0.0);
  EXPECT_NEAR(v.x0(), 1.8 * std::exp(-3.0) * std::cos(std::sqrt(0.8) * 3.0), 1e-14);
}

TEST(Pdf, PowerDomainErrorPropagates) {
  // xi = e1 has a zero second component; alpha = 1 keeps Re > 0 so that is
  // fine, but a negative-real-part exponent cannot occur (alpha is valid), so
  // check the zero component gives a finite value.
  const Bicomplex v = pdf(kE1, params(0.5, 0.5)).value;
  EXPECT_TRUE(is_finite(v));
}

TEST(Mgf, Examples) {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 50; ++i) {
    const MLDistParams p = random_params(gen);
    EXPECT_LE(norm(mgf(Bicomplex(0.0), p).value - Bicomplex(1.0)), 1e-14);
  }
  for (double t : {-2.0, -0.5, 0.3}) {
    expect_real(mgf(Bicomplex(t), params(0.0, 0.7)).value, 1.0 / (1.0 - t), 1e-14);
  }
  const MgfResult m = mgf(Bicomplex(0.25), params(0.5, 1.0));
  expect_real(m.value, 1.2, 1e-14);
  EXPECT_FALSE(m.analytic_continuation);
}

TEST(Mgf, ExponentialClosedForm) {
  for (double a : {0.1, 0.5, 0.8}) {
    for (int i = 0; i < 50; ++i) {
      const double t = -3.0 + 3.5 * i / 49.0;
      const double want = (1.0 + a) / (1.0 + a - t);
      EXPECT_LE(std::fabs(mgf(Bicomplex(t), params(a, 1.0)).value.x0() - want), 1e-10 * std::fabs(want));
    }
  }
}

TEST(Mgf, FlagsAnalyticContinuation) {
  // |a / (1-t)^alpha| = 0.8 / 0.25 > 1.
  const MgfResult m = mgf(Bicomplex(0.5), params(0.8, 2.0));
  EXPECT_TRUE(m.analytic_continuation);
  EXPECT_FALSE(m.in_series_region[0]);
  expect_real(m.value, 1.8 * 0.5 / (0.8 + 0.25), 1e-14);
}

TEST(Mgf, NullConeDenominators) {
  try {
    mgf(Bicomplex(1.0), params(0.5, 0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_divisor);
  }
  // 1 - t = 2 e2 (first component vanishes).
  EXPECT_THROW(mgf(1.0 * kE1 - 1.0 * kE2, params(0.5, 0.5)), Error);
  // a + (1 - t)^alpha = 0 at a = 0.5, alpha = 1, t = 1.5.
  EXPECT_THROW(mgf(Bicomplex(1.5), params(0.5, 1.0)), Error);
}

TEST(Mgf, MatchesScalarClosedFormPerComponent) {
  std::mt19937_64 gen(32);
  for (int i = 0; i < 100; ++i) {
    const MLDistParams p = random_params(gen);
    const Bicomplex t = Bicomplex::make(-0.3, 0.1, 0.05, 0.2);
    const IdempotentPair got = mgf(t, p).value.idempotent();
    const IdempotentPair tt = t.idempotent(), a = p.a().idempotent(), al = p.alpha().idempotent();
    const Complex f = closed_form::mgf(tt.first, a.first, al.first);
    const Complex s = closed_form::mgf(tt.second, a.second, al.second);
    EXPECT_LE(std::abs(got.first - f), 1e-13 * std::max(1.0, std::abs(f)));
    EXPECT_LE(std::abs(got.second - s), 1e-13 * std::max(1.0, std::abs(s)));
  }
}

TEST(Moment, DegenerateCaseIsFactorial) {
  const double factorial[] = {1, 1, 2, 6, 24};
  for (double alpha : {0.25, 1.0, 2.0}) {
    for (int r = 0; r <= 4; ++r) {
      const Bicomplex m = moment(r, params(0.0, alpha));
      EXPECT_EQ(m.x0(), factorial[r]);
      EXPECT_EQ(m.x1(), 0.0);
      EXPECT_EQ(m.x3(), 0.0);
    }
  }
}

TEST(Moment, ReferenceValues) {
  // Exact rationals; cross-checked against a 40-digit sum of the
  // term-by-term series (1+a) sum (-a)^k (alpha k + 1)...(alpha k + r).
  const MLDistParams half = params(0.5, 0.5);
  expect_real(moment(1, half), 5.0 / 6.0, 1e-15);
  expect_real(moment(2, half), 53.0 / 36.0, 1e-15);
  expect_real(moment(3, half), 4.0138888888888888888888889, 1e-14);
  expect_real(moment(4, half), 14.844907407407407407407407, 1e-13);

  const MLDistParams sq = params(0.5, 2.0);
  expect_real(moment(1, sq), 1.0 / 3.0, 1e-15);
  expect_real(moment(2, sq), -4.0 / 9.0, 1e-15);
  expect_real(moment(3, sq), -28.0 / 9.0, 1e-14);
  expect_real(moment(4, sq), -13.037037037037037037037037, 1e-13);

  expect_real(moment(1, params(1.0, 2.0)), 0.0, 1e-15);
  expect_real(moment(4, params(0.3, 0.7)), 13.877250835054795000175, 1e-13);
}

TEST(Moment, ComplexComponentReference) {
  // Idempotent component a = 0.3 - 0.4 i, alpha = 1.2 + 0.35 i (40-digit series).
  const Complex a(0.3, -0.4), alpha(1.2, 0.35);
  const MLDistParams p = MLDistParams::make(from_idempotent(a, a), from_idempotent(alpha, alpha));
  const Complex want[] = {{0.5675675675675675675676, 0.1554054054054054054054},
                          {0.455085829072315558802, 0.2325420014609203798393},
                          {0.2148211359643061615304, 0.02375196187787495311235},
                          {-0.9040772452480069748543, -2.314865739122732785497}};
  for (int r = 1; r <= 4; ++r) {
    const Complex got = moment(r, p).idempotent().first;
    EXPECT_LT(std::abs(got - want[r - 1]), 1e-14 * std::max(1.0, std::abs(want[r - 1]))) << r;
  }
}

TEST(Moment, UnitOrderMatchesExponentialMoments) {
  for (double a : {0.1, 0.5, 0.8}) {
    const double lambda = 1.0 + a;
    const double want[] = {1.0, 1.0 / lambda, 2.0 / (lambda * lambda), 6.0 / std::pow(lambda, 3),
                           24.0 / std::pow(lambda, 4)};
    for (int r = 0; r <= 4; ++r) {
      EXPECT_NEAR(moment(r, params(a, 1.0)).x0(), want[r], 1e-14 * want[r]);
    }
  }
}

TEST(Moment, ComponentwiseDecomposition) {
  std::mt19937_64 gen(35);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 200; ++i) {
    const MLDistParams p = random_params(gen);
    const IdempotentPair a = p.a().idempotent(), al = p.alpha().idempotent();
    for (int r = 1; r <= 4; ++r) {
      const IdempotentPair got = moment(r, p).idempotent();
      const Complex f = closed_form::raw_moment(r, a.first, al.first);
      const Complex s = closed_form::raw_moment(r, a.second, al.second);
      // Two ulp of the larger component: recomposing to (z1, z2) and back
      // rounds each component at the scale of the other.
      const double ulp = eps * std::max(std::abs(f), std::abs(s));
      EXPECT_LE(std::abs(got.first - f), 2.0 * ulp) << i << " r=" << r;
      EXPECT_LE(std::abs(got.second - s), 2.0 * ulp) << i << " r=" << r;
    }
  }
}

TEST(Moment, MatchesIndependentTranscription) {
  // Same formulas typed out again with a different evaluation order. With
  // 1 + a as small as 0.1 the alternating terms grow like (1 + a)^-4, so the
  // two orders only agree to about 1e-12.
  auto scalar = [](int r, Complex a, Complex al) -> Complex {
    const Complex s = 1.0 + a;
    switch (r) {
      case 1: return 1.0 - a * al / (a + 1.0);
      case 2: return 2.0 - 3.0 * a * al / s + a * (a - 1.0) * al * al / (s * s);
      case 3:
        return 6.0 - 11.0 * a * al / s + 6.0 * a * (a - 1.0) * al * al / (s * s) -
               a * (a * a - 4.0 * a + 1.0) * al * al * al / (s * s * s);
      default:
        return 24.0 - 50.0 * a * al / s + 35.0 * a * (a - 1.0) * al * al / (s * s) -
               10.0 * a * (a * a - 4.0 * a + 1.0) * al * al * al / (s * s * s) +
               a * (a * a * a - 11.0 * a * a + 11.0 * a - 1.0) * al * al * al * al / (s * s * s * s);
    }
  };
  std::mt19937_64 gen(33);
  for (int i = 0; i < 200; ++i) {
    const MLDistParams p = random_params(gen);
    const IdempotentPair a = p.a().idempotent(), al = p.alpha().idempotent();
    for (int r = 1; r <= 4; ++r) {
      const IdempotentPair got = moment(r, p).idempotent();
      const Complex f = scalar(r, a.first, al.first);
      const Complex s = scalar(r, a.second, al.second);
      EXPECT_LE(std::abs(got.first - f), 1e-10 * std::max(1.0, std::abs(f))) << i << " r=" << r;
      EXPECT_LE(std::abs(got.second - s), 1e-10 * std::max(1.0, std::abs(s))) << i << " r=" << r;
    }
  }
}

TEST(Moment, Errors) {
  try {
    moment(5, params(0.5, 0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
  EXPECT_THROW(moment(-1, params(0.5, 0.5)), Error);
}

TEST(MeanVariance, Examples) {
  for (double a : {0.0, 0.2, 0.9, 3.0}) {
    expect_real(mean(params(a, 1.0)), 1.0 / (1.0 + a), 1e-15);
    expect_real(variance(params(a, 1.0)), 1.0 / ((1.0 + a) * (1.0 + a)), 1e-15);
  }
  expect_real(mean(params(0.0, 0.4)), 1.0, 0.0);
  expect_real(variance(params(0.0, 0.4)), 1.0, 0.0);
  expect_real(mean(params(0.5, 0.5)), 5.0 / 6.0, 1e-15);
  expect_real(variance(params(0.5, 0.5)), 7.0 / 9.0, 1e-15);
}

TEST(MeanVariance, VarianceIsSecondMomentMinusSquaredMean) {
  std::mt19937_64 gen(34);
  for (int i = 0; i < 200; ++i) {
    const MLDistParams p = random_params(gen);
    const Bicomplex m1 = moment(1, p);
    const Bicomplex identity = moment(2, p) - m1 * m1;
    EXPECT_LE(norm(variance(p) - identity), 1e-12 * std::max(1.0, norm(identity)));
    EXPECT_TRUE(approx_equal(mean(p), m1, 1e-15));
  }
}

}  // namespace
}  // namespace bcml
