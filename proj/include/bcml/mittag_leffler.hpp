#pragma once

#include <array>
#include <string>

#include "bcml/bicomplex.hpp"

namespace bcml {

inline constexpr double kDefaultSeriesTol = 1e-12;
inline constexpr int kDefaultMaxTerms = 10000;

struct SeriesOptions {
  double tol = kDefaultSeriesTol;
  int max_terms = kDefaultMaxTerms;
};

/// Outcome of summing a Mittag-Leffler series over the complex numbers.
///   error_estimate: |first discarded term| / max(1, |sum|)
///   converged: the stopping rule fired and error_estimate <= tol
struct ComplexEvalResult {
  Complex value;
  int terms_used = 0;
  double error_estimate = 0.0;
  bool converged = false;
};

/// Bicomplex counterpart: one term count per idempotent component, the
/// larger of the two error estimates, and converged iff both components did.
struct EvalResult {
  Bicomplex value;
  std::array<int, 2> terms_used{};
  double error_estimate = 0.0;
  bool converged = false;
};

/// z^k / Gamma(alpha k + 1), evaluated in log space. Purely real arguments
/// take an extended-precision path and yield a real result.
Complex mittag_leffler_term(Complex alpha, Complex z, int k);

/// E_alpha(z) = sum_k z^k / Gamma(alpha k + 1).
///
/// Summation stops once three consecutive terms are below
/// tol * max(1, |partial sum|). Running out of max_terms is not an error; the
/// result simply comes back with converged == false.
///
/// Throws Error(invalid_argument) when Re(alpha) <= 0, tol <= 0 or
/// max_terms < 1.
ComplexEvalResult mittag_leffler(Complex alpha, Complex z, const SeriesOptions& opts = {});

struct AlphaValidation {
  bool valid = false;
  std::string diagnostic;
};

/// |Im_j(alpha)| < Re(alpha), i.e. both idempotent components of alpha have
/// positive real part. The diagnostic reports both forms.
AlphaValidation validate_alpha(const Bicomplex& alpha);

/// A bicomplex order that has passed validate_alpha.
class AlphaParam {
 public:
  /// Throws Error(invalid_parameter) carrying the validation diagnostic.
  static AlphaParam make(const Bicomplex& alpha);

  const Bicomplex& value() const { return alpha_; }
  IdempotentPair idempotent() const { return alpha_.idempotent(); }

 private:
  explicit AlphaParam(const Bicomplex& alpha) : alpha_(alpha) {}
  Bicomplex alpha_;
};

/// E_alpha1(xi1) e1 + E_alpha2(xi2) e2. Errors from either component are
/// rethrown with the component named.
EvalResult mittag_leffler(const AlphaParam& alpha, const Bicomplex& xi,
                          const SeriesOptions& opts = {});

}  // namespace bcml
