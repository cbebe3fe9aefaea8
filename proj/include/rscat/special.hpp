// SPDX-License-Identifier: Apache-2.0
#pragma once

// Bessel/Hankel evaluation for the 2D Helmholtz kernel. Two regimes:
// ascending series below |z| = 14, Hankel asymptotic expansion (optimally
// truncated) above. The crossover is placed where both regimes deliver
// ~1e-11 relative accuracy in double precision, so the overlap window
// [12,16] is testable against both routes.

#include <cmath>
#include <limits>

#include "rscat/common.hpp"

namespace rscat::special {

inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double series_asymptotic_crossover = 14.0;

/// J0 by the ascending series; valid for complex z, accurate for |z| <~ 16.
inline cplx j0_series(cplx z) {
  const cplx q = -0.25 * z * z;
  cplx term{1.0, 0.0}, sum = term;
  for (int m = 1; m < 80; ++m) {
    term *= q / double(m) / double(m);
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

/// Y0 by the ascending series (principal branch of log); |z| <~ 16, Re z > 0.
inline cplx y0_series(cplx z) {
  const cplx q = -0.25 * z * z;
  cplx term{1.0, 0.0}, sum{0.0, 0.0};
  double harmonic = 0.0;
  for (int m = 1; m < 80; ++m) {
    term *= q / double(m) / double(m);
    harmonic += 1.0 / m;
    // (-1)^{m+1} H_m (z^2/4)^m/(m!)^2  ==  -H_m * term
    sum -= harmonic * term;
    if (std::abs(term) * harmonic < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return (2.0 / pi) * ((std::log(0.5 * z) + euler_gamma) * j0_series(z) + sum);
}

/// H0^(1) by the Hankel asymptotic expansion, optimally truncated.
/// Error at the smallest term is O(e^{-2|z|}); use only for |z| >= ~12.
inline cplx h0_asymptotic(cplx z) {
  cplx term{1.0, 0.0}, sum = term;
  double prev = std::numeric_limits<double>::max();
  for (int m = 0; m < 40; ++m) {
    const double c = double(2 * m + 1) * double(2 * m + 1) / (8.0 * (m + 1));
    term *= -iu * c / z;
    const double mag = std::abs(term);
    if (mag >= prev) break;  // past the optimal truncation point
    sum += term;
    prev = mag;
  }
  return std::sqrt(2.0 / (pi * z)) * std::exp(iu * (z - 0.25 * pi)) * sum;
}

/// Hankel function of the first kind, order zero. Accepts complex z with
/// Re z > 0, Im z >= 0 (the range produced by kr with Im k >= 0).
inline cplx h0(cplx z) {
  if (std::abs(z) < series_asymptotic_crossover)
    return j0_series(z) + iu * y0_series(z);
  return h0_asymptotic(z);
}

inline double j0(double x) { return h0(cplx(x, 0.0)).real(); }
inline double y0(double x) { return h0(cplx(x, 0.0)).imag(); }

}  // namespace rscat::special
