#pragma once

#include <cstddef>
#include <vector>

namespace dpplab {

struct QuadratureRule {
  std::vector<double> nodes;  // ascending
  std::vector<double> weights;
};

/// Monic three-term recurrence for the Jacobi weight (1-u)^alpha (1+u)^beta
/// on [-1, 1]:  pi_{k+1}(u) = (u - a_k) pi_k(u) - b_k pi_{k-1}(u).
/// b[0] holds the total mass of the weight.
struct RecurrenceCoefficients {
  std::vector<double> a;
  std::vector<double> b;
};

/// Coefficients a_0..a_{n-1}, b_0..b_{n-1}. Requires alpha, beta > -1.
RecurrenceCoefficients jacobi_recurrence(double alpha, double beta, std::size_t n);

/// n-point Gauss-Jacobi rule via the Golub-Welsch eigenvalue problem.
QuadratureRule gauss_jacobi_rule(double alpha, double beta, std::size_t n);

}  // namespace dpplab
