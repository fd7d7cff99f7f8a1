#pragma once

#include <string>
#include <vector>

#include "dpplab/ground_space.hpp"
#include "dpplab/kernel_operator.hpp"

namespace dpplab {

inline constexpr double kProjectionTolerance = 1e-10;
inline constexpr double kDegenerateGramCondition = 1e12;

/// sum_x u(x) v(x) w_x.
double weighted_inner(const Vector& u, const Vector& v, const GroundSpace& space);
double weighted_norm(const Vector& u, const GroundSpace& space);

struct Norms {
  double operator_norm = 0.0;
  double hs_norm = 0.0;
  double trace_norm = 0.0;
  double trace = 0.0;
};

Norms norms(const KernelOperator& k);

/// Eigenvalues of the counting form in ascending order.
Vector spectrum(const KernelOperator& k);

struct LocalTraceNorm {
  double value = 0.0;
  /// Set when either window is empty; value is then 0.
  bool empty_window = false;
};

/// Trace norm of chi_A K chi_B, i.e. the sum of singular values of the
/// counting-form block K^[A, B].
LocalTraceNorm local_trace_norm(const KernelOperator& k, const Window& a, const Window& b);

/// Sum of singular values of an arbitrary dense block.
double trace_norm_of(const Matrix& block);

/// Counting-form orthonormal basis (columns W^{1/2} e_k) of span(basis).
///
/// Modified Gram-Schmidt in the weighted inner product followed by a
/// re-orthogonalization pass. Before orthogonalizing, the Gram matrix of the
/// unit-normalized vectors is checked: if the condition number of its leading
/// k x k block exceeds 1e12, DegenerateBasisError names vector k-1.
Matrix orthonormal_counting_basis(const std::vector<Vector>& basis, const GroundSpace& space);

/// Orthogonal projection onto span(basis), in mu-relative form.
KernelOperator project_span(const std::vector<Vector>& basis, const GroundSpacePtr& space);

/// Largest entrywise deviation from idempotence and from symmetry in counting form.
struct ProjectionDefect {
  double idempotence = 0.0;
  double symmetry = 0.0;
};
ProjectionDefect projection_defect(const KernelOperator& p);
bool is_projection(const KernelOperator& p, double tol = kProjectionTolerance);

/// Counting-form orthonormal basis of range(P) for a projection P
/// (eigenvectors with eigenvalue above 1/2).
Matrix range_basis(const KernelOperator& p);

/// Rank of a projection: number of eigenvalues above 1/2.
Index projection_rank(const KernelOperator& p);

/// arcsin(||(I - P) v|| / ||v||) in the weighted norm, in [0, pi/2].
/// Throws a domain error for v = 0 and a contract error if P is not a projection.
double angle(const Vector& v, const KernelOperator& p);

/// Same angle against the span of a counting-form orthonormal basis.
double angle_to_counting_basis(const Vector& v, const Matrix& q, const GroundSpace& space);

/// Spectrum of the counting form within [-tol, 1 + tol].
bool is_positive_contraction(const KernelOperator& k, double tol);

/// Trace norm of chi_W (A A^T - B B^T) chi_W for counting-form factors A, B
/// (n x r each), computed through a thin QR of [A_W, B_W] without forming
/// the |W| x |W| block.
double low_rank_local_trace_distance(const Matrix& a, const Matrix& b, const Window& w);

}  // namespace dpplab
