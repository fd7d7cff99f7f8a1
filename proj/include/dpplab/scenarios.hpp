#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpplab/deformations.hpp"
#include "dpplab/dpp.hpp"
#include "dpplab/kernel_operator.hpp"
#include "dpplab/measure.hpp"
#include "dpplab/weight_function.hpp"

// Scripted families shared by the command-line runner and the test suites.

namespace dpplab {

/// P_n = projection onto span{1, x + e_n sin(3 pi x)}, v^(n) = x^2 + e_n cos(5x)
/// on a uniform grid of (0, 1], e_n = amplitude * n^-4. The limit is e = 0.
struct PerturbationScenario {
  Index grid_points = 128;
  std::vector<long> schedule{1, 2, 4, 8, 16, 32, 64};
  double amplitude = 0.5;
  double min_angle = kDefaultMinAngle;
};

struct PerturbationFamily {
  GroundSpacePtr space;
  std::vector<KernelOperator> pn;
  std::vector<std::vector<Vector>> vn;
  KernelOperator p;
  std::vector<Vector> v;
  std::vector<Window> windows;
  std::vector<long> labels;
};

PerturbationFamily build_perturbation_family(const PerturbationScenario& s);

/// Ground space (0, 20] with 200 uniform cells, shared by the tightness
/// families. "fixed": projection onto span{e^-x, x e^-x} repeated; "drifting":
/// projection onto a unit bump centred at 2, 4, ..., 18. Tails are [10, 20],
/// [15, 20] and [18, 20].
struct TightnessFamily {
  GroundSpacePtr space;
  std::vector<KernelOperator> kernels;
  std::vector<std::string> labels;
  std::vector<Window> tails;
};

TightnessFamily fixed_tightness_family(std::size_t members = 8);
TightnessFamily drifting_tightness_family();

struct ChebyshevCase {
  std::string name;
  KernelOperator kernel;
  WeightFunction f;
  double level;
};

/// Five kernels: identity on 3 points, a rank-2 projection, a weighted rank-3
/// projection with non-constant f, a non-projection contraction, and the s = 0
/// Bessel kernel on (0, 10].
std::vector<ChebyshevCase> chebyshev_cases();

/// Three kernels on at most 6 points: two projections (ranks 2 and 3, the
/// second on a non-uniform grid) and a contraction with spectrum in (0, 1).
std::vector<std::pair<std::string, KernelOperator>> sampler_cases();

/// Weak-convergence family on 8 counting points: limit P = projection onto
/// span{1, x, cos x}, member n is (1 - 1/n) P + (1/n) A with A = projection
/// onto span{sin x, x^2, 1}. Test functions are the indicators of the left and
/// right halves, f = 1.
struct WeakConvergenceScenario {
  std::vector<long> schedule{4, 8, 16, 32, 64};
  std::size_t batch_size = 4000;
  std::size_t permutations = 199;
  std::uint64_t seed = 7;
  /// Same-law calibration design.
  std::size_t calibration_batch = 200;
  std::size_t calibration_repetitions = 200;
};

struct WeakConvergenceFamily {
  GroundSpacePtr space;
  KernelOperator limit;
  std::vector<KernelOperator> members;
  WeightFunction f;
  std::vector<Vector> phis;
};

WeakConvergenceFamily build_weak_convergence_family(const WeakConvergenceScenario& s);

/// Sequence test: batches are drawn with keys from stream (seed, 1), limit
/// first. Calibration (optional) uses `seed` itself.
struct WeakConvergenceRun {
  WeakConvergenceReport sequence;
  std::optional<CalibrationResult> calibration;
};

WeakConvergenceRun run_weak_convergence_scenario(const WeakConvergenceScenario& s, bool calibrate,
                                                 unsigned jobs = 1);

}  // namespace dpplab
