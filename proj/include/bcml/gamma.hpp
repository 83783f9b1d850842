#pragma once

#include "bcml/bicomplex.hpp"

namespace bcml {

/// Gamma function of a complex argument. Lanczos (g = 7, nine coefficients)
/// for Re z >= 1/2 and the reflection formula below that. Throws
/// Error(pole) within 1e-12 of a non-positive integer.
Complex gamma(Complex z);

/// log Gamma(z) for complex z. The imaginary part is determined only modulo
/// 2 pi; callers that exponentiate it are unaffected.
Complex log_gamma(Complex z);

}  // namespace bcml
