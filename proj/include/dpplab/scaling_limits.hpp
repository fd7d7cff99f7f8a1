#pragma once

#include <string>
#include <vector>

#include "dpplab/convergence.hpp"
#include "dpplab/kernel_operator.hpp"

namespace dpplab {

// Hard-edge scaling convention: Jacobi weight (1-u)^s on [-1, 1] and
// x = 2 n^2 (1 - u), so that
//   K~_n(x, y) = K_n(1 - x/(2n^2), 1 - y/(2n^2)) / (2 n^2)
// tends to the Bessel kernel J~_s on (0, inf) with Lebesgue measure.

/// Orthonormal values p_0(u)..p_{count-1}(u) for the weight (1-u)^s via the
/// three-term recurrence. Domain error for s <= -1 or |u| > 1.
std::vector<double> jacobi_polynomials(double s, std::size_t count, double u);

/// Derivatives p_0'(u)..p_{count-1}'(u).
std::vector<double> jacobi_polynomial_derivatives(double s, std::size_t count, double u);

/// max |int p_i p_j (1-u)^s du - delta_ij| over i, j <= max_degree, using a
/// Gauss-Jacobi rule that integrates the products exactly.
double jacobi_orthonormality_residual(double s, std::size_t max_degree);

/// Christoffel-Darboux kernel sum_{k<n} p_k(u) p_k(v) (weight not applied).
double christoffel_darboux_sum(double s, std::size_t n, double u, double v);

/// Two-point closed form sqrt(b_n) (p_n(u) p_{n-1}(v) - p_{n-1}(u) p_n(v)) / (u - v),
/// with the l'Hopital limit on the diagonal.
double christoffel_darboux_closed(double s, std::size_t n, double u, double v);

/// Rescaled Jacobi kernel K~_n^{(s)} on a grid inside (0, 4 n^2].
KernelOperator jacobi_cd_kernel(double s, std::size_t n, const GroundSpacePtr& grid);

/// Bessel kernel value
///   [J_s(sqrt x) sqrt y J_s'(sqrt y) - J_s(sqrt y) sqrt x J_s'(sqrt x)] / (2 (x - y)),
/// with the analytic diagonal (J_s^2 + J_{s+1}^2 - (2s/z) J_s J_{s+1}) / 4, z = sqrt x.
double bessel_kernel_value(double s, double x, double y);

KernelOperator bessel_kernel(double s, const GroundSpacePtr& grid);

enum class KernelFamily { kJacobiCd, kBessel };

struct ClassicalKernelSpec {
  KernelFamily family = KernelFamily::kBessel;
  double s = 0.0;
  std::size_t n = 0;  // jacobi only
  GroundSpacePtr grid;

  KernelOperator build() const;
};

struct HeineMehlerRow {
  double s = 0.0;
  long n = 0;
  std::string window_id;
  double i1_distance = 0.0;
  /// distance / previous distance in the same window; NaN on the first row.
  double ratio_to_previous = 0.0;
};

struct HeineMehlerReport {
  ConvergenceReport report;
  std::vector<HeineMehlerRow> rows;

  bool strictly_decreasing() const { return report.all_strictly_decreasing(); }
  /// Columns s, n, window_id, i1_distance, ratio_to_previous.
  std::string to_csv() const;
};

/// Default grid for the suite: 160 Gauss-Legendre nodes on (0, 10].
GroundSpacePtr default_hard_edge_grid();

/// Windowed trace-norm distances ||K~_n - J~_s|| for each n.
HeineMehlerReport heine_mehler_suite(double s, const std::vector<std::size_t>& n_list,
                                     const std::vector<Window>& windows, const GroundSpacePtr& grid,
                                     unsigned jobs = 1);

}  // namespace dpplab
