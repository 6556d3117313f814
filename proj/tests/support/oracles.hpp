#pragma once

// Test-only reference computations, kept independent of the library code
// paths they check.

#include <cmath>
#include <numbers>

namespace testsupport {

// Sign of Gamma(x) for non-pole x: positive for x > 0, alternating on the
// negative axis via the reflection formula.
inline double gamma_sign(double x) {
    if (x > 0.0) return 1.0;
    return std::sin(std::numbers::pi * x) >= 0.0 ? 1.0 : -1.0;
}

// Fractional binomial tap (-1)^j * binom(alpha, j) evaluated through the
// Gamma function: binom(alpha, j) = Gamma(alpha+1) / (Gamma(j+1) * Gamma(alpha-j+1)).
// A Gamma pole in the denominator (alpha-j+1 a non-positive integer, e.g.
// alpha = 1 with j >= 2) makes the binomial zero.
inline double gl_tap_gamma(double alpha, int j) {
    if (j == 0) return 1.0;
    const double x = alpha - j + 1.0;
    if (x <= 0.0 && std::fabs(x - std::round(x)) < 1e-9) return 0.0;
    const double log_mag = std::lgamma(alpha + 1.0) - std::lgamma(j + 1.0) -
                           std::lgamma(x);
    const double sign = gamma_sign(alpha + 1.0) / (gamma_sign(j + 1.0) * gamma_sign(x));
    const double parity = (j % 2 == 0) ? 1.0 : -1.0;
    return parity * sign * std::exp(log_mag);
}

// Relative agreement check that treats exact-zero references specially.
inline bool close_rel(double got, double want, double rel_tol, double zero_tol = 1e-15) {
    if (want == 0.0) return std::fabs(got) <= zero_tol;
    return std::fabs(got - want) / std::fabs(want) <= rel_tol;
}

}  // namespace testsupport
