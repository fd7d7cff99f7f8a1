#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dpplab/convergence.hpp"
#include "dpplab/kernel_operator.hpp"
#include "dpplab/weight_function.hpp"

namespace dpplab {

inline constexpr double kDefaultMinAngle = 0.05;

/// H = L + V with a distinguished core window E_0 and a uniform angle bound.
///
/// Invariant: each extra vector v_k makes an angle of at least min_angle with
/// span(L, v_1, ..., v_{k-1}) on the full ground space.
class DeformationModel {
 public:
  DeformationModel(GroundSpacePtr space, std::vector<Vector> l_basis, std::vector<Vector> extra, Window core,
                   double min_angle = kDefaultMinAngle);

  const GroundSpacePtr& space() const noexcept { return space_; }
  const std::vector<Vector>& l_basis() const noexcept { return l_basis_; }
  const std::vector<Vector>& extra() const noexcept { return extra_; }
  const Window& core() const noexcept { return core_; }
  double min_angle() const noexcept { return min_angle_; }

  /// Q, the projection onto L.
  KernelOperator unperturbed() const;

 private:
  GroundSpacePtr space_;
  std::vector<Vector> l_basis_;
  std::vector<Vector> extra_;
  Window core_;
  double min_angle_;
};

/// Projection onto range(P) + span(vs), built as P + sum_k v~_k v~_k^T where
/// v~_k is the normalized residual of v_k against everything before it.
/// AngleDegeneracyError names k when the residual angle drops below min_angle.
KernelOperator extend_projection(const KernelOperator& p, const std::vector<Vector>& vs,
                                 double min_angle = kDefaultMinAngle);

/// Windowed trace distances of extend_projection(P_n, v^(n)) to
/// extend_projection(P, v). Members are built in order, then the limit; an
/// angle error is rethrown with the offending member's label.
ConvergenceReport perturbation_convergence_suite(const std::vector<KernelOperator>& pn,
                                                 const std::vector<std::vector<Vector>>& vn,
                                                 const KernelOperator& p, const std::vector<Vector>& v,
                                                 const std::vector<Window>& windows,
                                                 double min_angle = kDefaultMinAngle, std::vector<long> labels = {});

struct SqrtgDecomposition {
  KernelOperator total;         // Pi^g, projection onto sqrt(g) (L + V)
  KernelOperator induced_part;  // Q^g = induced_kernel(g, Q)
  KernelOperator complement;    // P~, onto the complement of sqrt(g) L inside sqrt(g) H
  std::vector<double> angles;   // sequential angles of sqrt(g) v_k
  /// max |total - project_span(sqrt(g) [L, V])|.
  double verification_error = 0.0;
};

SqrtgDecomposition sqrtg_decomposition(const DeformationModel& model, const WeightFunction& g);

/// Pi^g = Q^g + P~. Checked against a direct projection onto the concatenated
/// weighted basis; a discrepancy above 1e-8 is a contract error.
KernelOperator sqrtg_subspace_projection(const DeformationModel& model, const WeightFunction& g);

/// Grid function from a closed-form tag:
///   "power:p"          x^p
///   "indicator:[a,b]"  1 on [a, b]
///   "bessel:s:c"       J_s(c sqrt x)
///   "constant:c"       c
Vector evaluate_function_tag(const std::string& tag, const GroundSpace& space);

struct ExhaustionRow {
  long n = 0;
  Index grid_points = 0;
  double b_lower = 0.0;          // left end of B_n in coordinates
  double angle = 0.0;            // smallest principal angle between chi L and chi V
  bool angle_ok = true;          // angle >= min_angle
  double v_norm = 0.0;           // largest weighted norm of chi v_k
  std::vector<double> distances; // ||chi_W (Pi^{E0 u Bn} - Q) chi_W||_1 per probe window
  double probe_norm = 0.0;       // ||P~ phi||
  double q_outside_trace = 0.0;  // tr chi_out Q chi_out, mass of Q outside E0 u Bn
};

struct ExhaustionReport {
  std::vector<std::string> probe_ids;
  std::vector<ExhaustionRow> rows;

  /// Distances (as a ConvergenceReport) over rows.
  ConvergenceReport distance_report() const;
  /// From the first row with angle >= min_angle on, every probe column is
  /// nonincreasing and every later row keeps the angle bound.
  bool decreasing_once_angles_hold() const;
  /// Long-format CSV: n, grid_points, b_lower, angle, angle_ok, v_norm,
  /// probe_norm, q_outside_trace, window_id, distance.
  std::string to_csv() const;
};

/// Pi^{E0 u B_n} -> Q on a single grid, for an increasing list of windows B_n.
/// `probe` is the fixed vector phi for ||P~ phi||.
ExhaustionReport exhaustion_suite(const DeformationModel& model, const std::vector<Window>& b_n,
                                  const std::vector<Window>& probe_windows, const Vector& probe);

/// Grid-refinement schedule: level k uses a graded grid of 2^k points on (0, 1]
/// (edges (i/2^k)^grid_power), B = [b_lower[k], core_lo), E_0 = [core_lo, core_hi].
struct ExhaustionScript {
  std::vector<std::size_t> levels{8, 9, 10, 11, 12};
  double grid_power = 5.0;
  std::vector<std::string> l_basis{"bessel:0:2", "bessel:0:5", "bessel:0:8"};
  std::vector<std::string> v_basis{"power:-0.75"};
  double core_lo = 0.5;
  double core_hi = 1.0;
  /// Left ends of B_n; empty means 2^{-4k} for level k.
  std::vector<double> b_lower;
  std::vector<std::pair<double, double>> probe_windows{{0.5, 1.0}, {0.25, 1.0}};
  std::string probe = "indicator:[0.5,1]";
  double min_angle = kDefaultMinAngle;
};

ExhaustionReport run_exhaustion_script(const ExhaustionScript& script, unsigned jobs = 1);

}  // namespace dpplab
