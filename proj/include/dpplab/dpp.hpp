#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpplab/finite_measure.hpp"
#include "dpplab/kernel_operator.hpp"

namespace dpplab {

inline constexpr double kSpectrumClampBand = 1e-10;
inline constexpr Index kMaxBruteForcePoints = 20;

/// A finite simple point configuration: a set of grid indices.
class Configuration {
 public:
  Configuration(GroundSpacePtr space, std::vector<Index> occupied);
  static Configuration from_mask(GroundSpacePtr space, std::uint64_t mask);

  const GroundSpacePtr& space() const noexcept { return space_; }
  const std::vector<Index>& occupied() const noexcept { return occupied_; }
  Index count() const noexcept { return occupied_.size(); }
  bool contains(Index i) const;
  /// Number of occupied points inside w.
  Index count_in(const Window& w) const;
  /// Bit i set iff point i is occupied; requires at most 64 points.
  std::uint64_t mask() const;

  bool operator==(const Configuration& other) const { return occupied_ == other.occupied_; }

 private:
  GroundSpacePtr space_;
  std::vector<Index> occupied_;
};

/// Determinantal law of a positive contraction K, with the spectral
/// decomposition of K^ cached. Eigenvalues within 1e-10 of [0, 1] are clamped
/// into it; anything further out is a contract error.
class DppDistribution {
 public:
  explicit DppDistribution(KernelOperator kernel);

  const KernelOperator& kernel() const noexcept { return kernel_; }
  const GroundSpacePtr& space() const noexcept { return kernel_.space(); }
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }
  /// Counting form of the kernel.
  const Matrix& counting() const noexcept { return counting_; }

 private:
  KernelOperator kernel_;
  Matrix counting_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
};

/// Exact law on Conf of a finite ground space: probability per bitmask.
struct ConfigurationLaw {
  GroundSpacePtr space;
  std::vector<double> probability;  // size 2^n, indexed by mask

  double operator()(std::uint64_t mask) const {
    return mask < probability.size() ? probability[mask] : 0.0;
  }
  double total() const;
};

/// P(A is contained in X) = det K^[A, A]; 1 for A empty.
double correlation(const DppDistribution& d, const std::vector<Index>& a);

/// P(X = S) for every S, from det(M_S) where M_S takes the rows of K^ on S and
/// the rows of I - K^ off S. Size error above 20 points.
ConfigurationLaw brute_force_distribution(const DppDistribution& d);

/// Exact i.i.d. samples (spectral algorithm: Bernoulli eigenvector selection,
/// then sequential point selection with elimination). Sample r uses stream
/// (seed, r) of CounterRng, so results do not depend on `jobs`.
std::vector<Configuration> sample(const DppDistribution& d, std::uint64_t seed, std::size_t count,
                                  unsigned jobs = 1);

/// Atomic measure with mass K(x, x) w_x at each point.
FiniteMeasure intensity(const DppDistribution& d);

/// Half the l1 distance; missing keys count as zero mass.
double total_variation(const ConfigurationLaw& p, const ConfigurationLaw& q);

/// Empirical law of a batch.
ConfigurationLaw empirical_law(const std::vector<Configuration>& batch, const GroundSpacePtr& space);

/// One row per configuration, occupied indices separated by spaces.
std::string samples_to_csv(const std::vector<Configuration>& batch);
std::vector<Configuration> samples_from_csv(const std::string& text, const GroundSpacePtr& space);

}  // namespace dpplab
