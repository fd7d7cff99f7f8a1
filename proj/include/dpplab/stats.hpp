#pragma once

#include <cstdint>
#include <vector>

#include "dpplab/ground_space.hpp"

namespace dpplab {

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit of observed counts against expected probabilities.
/// Cells whose expected count is below `min_expected` are pooled into one cell
/// (which is itself dropped into its nearest neighbour if still too small).
ChiSquareResult chi_square_gof(const std::vector<double>& observed_counts, const std::vector<double>& probabilities,
                               double min_expected = 5.0);

/// Points in R^l, one row per observation.
using Sample = Matrix;

/// V-statistic energy distance 2 E|X-Y| - E|X-X'| - E|Y-Y'| (Euclidean).
/// Identical rows are merged into weighted atoms first, which leaves the value
/// unchanged and makes permutation replicas cheap for discrete data.
double energy_distance(const Sample& a, const Sample& b);

struct PermutationResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Energy statistic with a randomized permutation p-value
/// (G + U (E + 1)) / (R + 1), G and E counting replicas strictly above and
/// equal to the observed value, U uniform. Ties are broken at random so the
/// p-value is exactly uniform under exchangeability even for discrete data.
PermutationResult energy_permutation_test(const Sample& a, const Sample& b, std::size_t permutations,
                                          std::uint64_t seed);

/// sup_p |F_n(p) - p| for the empirical CDF of values in [0, 1].
double kolmogorov_distance_to_uniform(std::vector<double> values);

}  // namespace dpplab
