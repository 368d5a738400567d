// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

namespace cubicpt {

// Gamma function on (0, 170]. Throws DomainError outside.
double gamma(double x);

// Airy function Ai(z) for complex z. Uses the Maclaurin series for |z| <= 2.5 and a
// Laplace-type integral beyond, mapped through Ai(z) = -w Ai(wz) - w^2 Ai(w^2 z) for
// |arg z| > 2pi/3. Returns 0 when the result underflows.
std::complex<double> airy_ai(std::complex<double> z);

// exp(2/3 z^{3/2}) Ai(z) for |arg z| <= 2pi/3, avoiding underflow for large |z|.
std::complex<double> airy_ai_scaled(std::complex<double> z);

}  // namespace cubicpt
