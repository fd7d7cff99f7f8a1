#pragma once

#include <cstdint>

#include "dpplab/dpp.hpp"
#include "dpplab/kernel_operator.hpp"
#include "dpplab/weight_function.hpp"

namespace dpplab {

inline constexpr double kInducibilityMargin = 1e-10;
inline constexpr double kMinNormalization = 1e-12;

/// Multiplicative functional: product of g over the configuration (1 when empty).
double psi_g(const WeightFunction& g, const Configuration& x);

struct Inducibility {
  /// ||(1 - g) P|| in counting form.
  double norm_1mg_p = 0.0;
  /// 1 - ||sqrt(1 - g) P||.
  double margin = 1.0;
  bool invertible = true;
};

/// Whether 1 + (g - 1) P is invertible. The operator fails to be invertible
/// exactly when some range vector of P vanishes wherever g is positive, i.e.
/// is supported on {g = 0}. Requires P to be a projection.
Inducibility check_inducibility(const WeightFunction& g, const KernelOperator& p);

/// sqrt(g) P (1 + (g - 1) P)^{-1} sqrt(g), the kernel of the Psi_g-induced
/// process; it is the orthogonal projection onto sqrt(g) range(P).
///
/// Strictly positive g goes through an LU factorization of 1 + (g - 1) P^.
/// When g has zeros (indicators), the kernel is built as the projection onto
/// sqrt(g) range(P) instead. Throws InducibilityError when the margin is at
/// most 1e-10.
KernelOperator induced_kernel(const WeightFunction& g, const KernelOperator& p);

/// det(1 + (g - 1) P^) = E_P[Psi_g].
double normalization_constant(const WeightFunction& g, const KernelOperator& p);

/// Operator norm of (1 + (g - 1) P^)^{-1}.
double resolvent_norm(const WeightFunction& g, const KernelOperator& p);

/// Law of the induced process. Conditioning-impossible error when the
/// normalization constant is at most 1e-12.
DppDistribution induced_distribution(const WeightFunction& g, const KernelOperator& p);

/// Psi_g-reweighted and renormalized copy of an exact law.
ConfigurationLaw reweight_law(const ConfigurationLaw& law, const WeightFunction& g);

struct OracleBatteryOptions {
  std::uint64_t seed = 7;
  std::size_t trials = 500;
  Index max_points = 10;
  Index max_rank = 3;
  double g_floor = 0.05;
};

struct OracleBatteryResult {
  std::size_t trials = 0;
  std::size_t tv_pass = 0;             // TV < 1e-9
  std::size_t normalization_pass = 0;  // |det - E[Psi_g]| < 1e-10
  std::size_t projection_pass = 0;     // max |B - project_span| < 1e-9
  double max_tv = 0.0;
  double max_normalization_error = 0.0;
  double max_projection_error = 0.0;
  double seconds = 0.0;
};

/// Random trials comparing the induced kernel against the brute-force
/// reweighted law: random weights, a random projection of rank <= max_rank
/// and g uniform in (g_floor, 1] per trial.
OracleBatteryResult run_oracle_battery(const OracleBatteryOptions& options, unsigned jobs = 1);

}  // namespace dpplab
