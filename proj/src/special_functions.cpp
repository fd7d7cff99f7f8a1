#include "dpplab/special_functions.hpp"

#include <algorithm>
#include <cmath>

#include "dpplab/errors.hpp"

namespace dpplab {
namespace {
constexpr double kPi = 3.14159265358979323846;
}

double bessel_j_series(double nu, double z) {
  if (!(nu > -1.0)) throw Error(ErrorKind::kDomain, "Bessel order must exceed -1");
  if (z < 0.0) throw Error(ErrorKind::kDomain, "Bessel argument must be nonnegative");
  if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double half = 0.5 * z;
  const double q = -half * half;
  double term = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0));
  double sum = term;
  for (int m = 1; m < 500; ++m) {
    term *= q / (static_cast<double>(m) * (static_cast<double>(m) + nu));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && m > half) break;
  }
  return sum;
}

double bessel_j_asymptotic(double nu, double z) {
  if (!(z > 0.0)) throw Error(ErrorKind::kDomain, "asymptotic expansion needs z > 0");
  const double mu = 4.0 * nu * nu;
  // a_k = prod_{j=1..k} (mu - (2j-1)^2) / (k! 8^k z^k), alternating into P and Q.
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = std::abs(term);
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (static_cast<double>(k) * 8.0 * z);
    if (std::abs(next) > last) break;
    term = next;
    last = std::abs(term);
    // k odd feeds Q with sign (-1)^{(k-1)/2}; k even feeds P with sign (-1)^{k/2}.
    if (k % 2 == 1) {
      q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    } else {
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    }
    if (last < 1e-17) break;
  }
  const double w = z - 0.5 * nu * kPi - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * z)) * (p * std::cos(w) - q * std::sin(w));
}

double bessel_j(double nu, double z) {
  if (!(nu > -1.0)) throw Error(ErrorKind::kDomain, "Bessel order must exceed -1");
  if (z < 0.0) throw Error(ErrorKind::kDomain, "Bessel argument must be nonnegative");
  return z <= kBesselCrossover ? bessel_j_series(nu, z) : bessel_j_asymptotic(nu, z);
}

double bessel_crossover_discrepancy(double nu, double lo, double hi, int samples) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double z = lo + (hi - lo) * static_cast<double>(i) / std::max(1, samples - 1);
    worst = std::max(worst, std::abs(bessel_j_series(nu, z) - bessel_j_asymptotic(nu, z)));
  }
  return worst;
}

}  // namespace dpplab
