#include "bcml/gamma.hpp"

#include <array>
#include <numbers>

namespace bcml {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kPoleTol = 1e-12;

void check_pole(Complex z) {
  const double n = std::round(z.real());
  if (n <= 0.0 && std::abs(z - Complex(n, 0.0)) <= kPoleTol) {
    throw Error(ErrorCode::pole, "gamma: pole at non-positive integer " + std::to_string(n));
  }
}

// Valid for Re z >= 1/2.
Complex log_gamma_lanczos(Complex z) {
  const Complex zm1 = z - 1.0;
  Complex series = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    series += kLanczosCoeffs[i] / (zm1 + static_cast<double>(i));
  }
  const Complex t = zm1 + kLanczosG + 0.5;
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return half_log_two_pi + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

Complex log_gamma(Complex z) {
  check_pole(z);
  if (z.real() >= 0.5) return log_gamma_lanczos(z);
  using std::numbers::pi;
  return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma_lanczos(1.0 - z);
}

Complex gamma(Complex z) {
  check_pole(z);
  if (z.real() >= 0.5) return std::exp(log_gamma_lanczos(z));
  using std::numbers::pi;
  return pi / (std::sin(pi * z) * std::exp(log_gamma_lanczos(1.0 - z)));
}

}  // namespace bcml
