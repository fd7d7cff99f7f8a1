#pragma once

namespace dpplab {

/// Argument at which bessel_j switches from the power series to the Hankel
/// asymptotic expansion.
inline constexpr double kBesselCrossover = 12.0;

/// J_nu(z) for nu > -1 and z >= 0.
double bessel_j(double nu, double z);

/// Power series sum_m (-1)^m (z/2)^{2m+nu} / (m! Gamma(m+nu+1)).
double bessel_j_series(double nu, double z);

/// Hankel expansion sqrt(2/(pi z)) (P cos w - Q sin w), w = z - nu pi/2 - pi/4,
/// truncated at its smallest term. Requires z > 0.
double bessel_j_asymptotic(double nu, double z);

/// Largest |series - asymptotic| over a uniform sweep of [lo, hi].
double bessel_crossover_discrepancy(double nu, double lo, double hi, int samples = 41);

}  // namespace dpplab
