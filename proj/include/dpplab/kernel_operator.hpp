#pragma once

#include <vector>

#include "dpplab/ground_space.hpp"

namespace dpplab {

/// Real symmetric integral operator on L2(E, mu) given by its kernel values
/// K(x_i, x_j) taken with respect to mu.
///
/// Spectral and determinantal computations use the counting form
/// K^ = W^{1/2} K W^{1/2}, W = diag(weights), which has the same spectrum as
/// the operator. Entries are symmetrized on construction so that
/// K(x, y) == K(y, x) holds bitwise; inputs whose asymmetry exceeds 1e-8
/// relative to their largest entry are rejected.
class KernelOperator {
 public:
  KernelOperator(GroundSpacePtr space, Matrix entries);

  static KernelOperator zero(GroundSpacePtr space);
  /// delta_{xy} / w_x, whose counting form is the identity matrix.
  static KernelOperator identity(GroundSpacePtr space);
  static KernelOperator from_counting(GroundSpacePtr space, const Matrix& counting);
  /// Sum of q_k q_k^T in counting form, for counting-form columns q_k.
  static KernelOperator from_counting_factor(GroundSpacePtr space, const Matrix& factor);

  const GroundSpacePtr& space() const noexcept { return space_; }
  const Matrix& entries() const noexcept { return entries_; }
  Index size() const noexcept { return space_->size(); }

  Matrix counting() const;

  /// sum_x K(x, x) w_x.
  double trace() const;

  KernelOperator operator+(const KernelOperator& other) const;
  KernelOperator operator-(const KernelOperator& other) const;
  KernelOperator operator*(double c) const;

  /// Throws a dimension error unless both live on equal ground spaces.
  void require_same_space(const KernelOperator& other) const;

 private:
  GroundSpacePtr space_;
  Matrix entries_;
};

/// A subspace of L2(E, mu) given by a list of grid functions. When
/// `orthonormal()` is set the basis is orthonormal in the weighted inner
/// product (Gram matrix equal to the identity within 1e-12).
class Subspace {
 public:
  Subspace(GroundSpacePtr space, std::vector<Vector> basis);

  /// Orthonormalized copy (modified Gram-Schmidt with a second pass).
  Subspace orthonormalized() const;

  const GroundSpacePtr& space() const noexcept { return space_; }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  bool orthonormal() const noexcept { return orthonormal_; }
  Index dimension() const noexcept { return basis_.size(); }

  /// Weighted Gram matrix <b_i, b_j>.
  Matrix gram() const;

 private:
  GroundSpacePtr space_;
  std::vector<Vector> basis_;
  bool orthonormal_ = false;
};

}  // namespace dpplab
