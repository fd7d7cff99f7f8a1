#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dpplab/dpp.hpp"
#include "dpplab/finite_measure.hpp"
#include "dpplab/kernel_operator.hpp"
#include "dpplab/weight_function.hpp"

namespace dpplab {

/// sum_{x in X} f(x) delta_x.
FiniteMeasure sigma_f(const Configuration& x, const WeightFunction& f);

/// Int_phi(eta) = sum_x phi(x) eta({x}).
double int_phi(const FiniteMeasure& eta, const Vector& phi);

struct TightnessOptions {
  /// bounded_trace holds when sup tr(sqrt f K sqrt f) is finite and at most this.
  double trace_bound = std::numeric_limits<double>::infinity();
  /// vanishing_tail holds when, for some scripted tail window, every member's
  /// tail trace is at most tail_tolerance * max(sup trace, tiny).
  double tail_tolerance = 0.05;
  /// uniform_margin holds when inf (1 - ||(1 - g) K||) exceeds this.
  double margin_floor = 1e-10;
  /// angle_bound holds when every sequential angle is at least this.
  double min_angle = 0.05;
  /// Spectrum slack for the positive-contraction check.
  double contraction_tolerance = 1e-9;
};

struct TightnessRow {
  std::string label;
  double trace = 0.0;                 // tr(sqrt f K sqrt f)
  std::vector<double> tail_traces;    // tr(chi_T sqrt f K sqrt f chi_T) per tail window
  std::optional<double> margin;       // 1 - ||(1 - g) K||
  std::vector<double> vector_masses;  // int f |v_k|^2 dmu per extra vector
  std::vector<std::vector<double>> vector_tail_masses;  // [k][tail window]
  std::vector<double> angles;         // sequential angle of v_k against range(K) + earlier v's
};

struct TightnessVerdict {
  bool bounded_trace = false;
  bool vanishing_tail = false;
  bool uniform_margin = true;  // true when no g was given
  bool angle_bound = true;     // true when no extra vectors were given
  bool tight = false;
};

struct TightnessReport {
  std::vector<std::string> tail_ids;
  std::vector<TightnessRow> rows;
  double sup_trace = 0.0;
  std::vector<double> sup_tail_traces;
  std::optional<double> inf_margin;
  std::optional<double> inf_angle;
  std::vector<double> sup_vector_masses;
  std::vector<std::vector<double>> sup_vector_tail_masses;
  TightnessVerdict verdict;

  /// Long-format CSV: member, quantity, window_id, value.
  std::string to_csv() const;
};

/// Precompactness data for a finite family of kernels. Members must be
/// positive contractions (contract error naming the member otherwise).
/// With `extra_vectors`, member a carries vectors v_a^(1..m); their sequential
/// angles are taken against range(K_a) when K_a is a projection, else against
/// the earlier vectors only.
TightnessReport tightness_report(const std::vector<KernelOperator>& kernels, const WeightFunction& f,
                                 const std::vector<Window>& tail_windows,
                                 const std::optional<WeightFunction>& g = std::nullopt,
                                 const std::vector<std::vector<Vector>>& extra_vectors = {},
                                 const TightnessOptions& options = {}, std::vector<std::string> labels = {});

struct ChebyshevCheck {
  double bound = 0.0;      // tr(sqrt f K sqrt f) / L
  double empirical = 0.0;  // fraction of samples with Int_E(sigma_f X) > L
  double slack = 0.0;      // 3 sqrt(p (1 - p) / N), p = min(bound, 1)
  bool pass = false;       // empirical <= bound + slack
};

/// Markov/Chebyshev bound on the mass functional. Domain error for L <= 0 and
/// argument error for an empty batch.
ChebyshevCheck chebyshev_mass_bound_check(const DppDistribution& d, const WeightFunction& f, double level,
                                          const std::vector<Configuration>& samples);

/// Rows (Int_{phi_1}(sigma_f X), ..., Int_{phi_l}(sigma_f X)), one per configuration.
Matrix linear_statistics(const std::vector<Configuration>& batch, const WeightFunction& f,
                         const std::vector<Vector>& phis);

/// Precondition error unless at most one phi_i is nonzero at each point.
void require_disjoint_supports(const std::vector<Vector>& phis, Index size);

struct WeakConvergenceRow {
  long n = 0;
  double statistic = 0.0;
  double p_value = 1.0;
};

struct WeakConvergenceReport {
  std::vector<WeakConvergenceRow> rows;
  bool statistic_decreasing = false;  // strictly
  bool final_p_above = false;         // last p-value > 0.01
  bool converges() const { return statistic_decreasing && final_p_above; }

  std::string to_csv() const;
};

inline constexpr double kWeakConvergencePThreshold = 0.01;

/// Energy two-sample tests of the law of (Int_{phi_i}(sigma_f X))_i under each
/// batch against the limit batch. Batches must have equal sizes; test
/// functions must have disjoint supports. Batch i is tested with permutation
/// seed (seed + i).
WeakConvergenceReport weak_convergence_test(const std::vector<std::vector<Configuration>>& batches,
                                            const std::vector<Configuration>& limit, const WeightFunction& f,
                                            const std::vector<Vector>& phis, std::size_t permutations,
                                            std::uint64_t seed, std::vector<long> labels = {}, unsigned jobs = 1);

struct CalibrationResult {
  std::vector<double> p_values;
  double ks_distance = 0.0;
};

/// Same-law calibration: for each repetition r two independent batches are
/// drawn from `d` (sample seeds derived from (seed, r)) and tested against
/// each other. Returns the p-values and their Kolmogorov distance to U(0, 1).
CalibrationResult weak_convergence_calibration(const DppDistribution& d, const WeightFunction& f,
                                               const std::vector<Vector>& phis, std::size_t batch_size,
                                               std::size_t repetitions, std::size_t permutations,
                                               std::uint64_t seed, unsigned jobs = 1);

}  // namespace dpplab
