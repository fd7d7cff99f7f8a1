#include "dpplab/kernel_operator.hpp"

#include <cmath>
#include <sstream>

#include "dpplab/errors.hpp"
#include "dpplab/operator_core.hpp"

namespace dpplab {

KernelOperator::KernelOperator(GroundSpacePtr space, Matrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  if (!space_) throw Error(ErrorKind::kArgument, "kernel operator needs a ground space");
  const auto n = static_cast<Eigen::Index>(space_->size());
  if (entries_.rows() != n || entries_.cols() != n) {
    std::ostringstream os;
    os << "kernel is " << entries_.rows() << "x" << entries_.cols() << " on a " << n << "-point space";
    throw Error(ErrorKind::kDimension, os.str());
  }
  if (!entries_.allFinite()) throw Error(ErrorKind::kDomain, "kernel has non-finite entries");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * scale) {
    std::ostringstream os;
    os << "kernel is not symmetric (max asymmetry " << asym << ")";
    throw Error(ErrorKind::kContract, os.str());
  }
  // a + b == b + a in IEEE arithmetic, so the average is exactly symmetric.
  Matrix sym = 0.5 * (entries_ + entries_.transpose());
  entries_ = std::move(sym);
}

KernelOperator KernelOperator::zero(GroundSpacePtr space) {
  const auto n = static_cast<Eigen::Index>(space->size());
  return KernelOperator(std::move(space), Matrix::Zero(n, n));
}

KernelOperator KernelOperator::identity(GroundSpacePtr space) {
  Matrix k = space->weight_vector().cwiseInverse().asDiagonal();
  return KernelOperator(std::move(space), std::move(k));
}

KernelOperator KernelOperator::from_counting(GroundSpacePtr space, const Matrix& counting) {
  const Vector inv_sqrt_w = space->sqrt_weight_vector().cwiseInverse();
  Matrix k = inv_sqrt_w.asDiagonal() * counting * inv_sqrt_w.asDiagonal();
  return KernelOperator(std::move(space), std::move(k));
}

KernelOperator KernelOperator::from_counting_factor(GroundSpacePtr space, const Matrix& factor) {
  const Vector inv_sqrt_w = space->sqrt_weight_vector().cwiseInverse();
  const Matrix f = inv_sqrt_w.asDiagonal() * factor;
  Matrix k = f * f.transpose();
  return KernelOperator(std::move(space), std::move(k));
}

Matrix KernelOperator::counting() const {
  // entry (i, j) scaled by the product sw_i sw_j, which is the same number
  // for (j, i); the counting form is then exactly symmetric
  const Vector sw = space_->sqrt_weight_vector();
  return entries_.cwiseProduct(sw * sw.transpose());
}

double KernelOperator::trace() const { return entries_.diagonal().dot(space_->weight_vector()); }

void KernelOperator::require_same_space(const KernelOperator& other) const {
  if (space_ != other.space_ && !(*space_ == *other.space_)) {
    throw Error(ErrorKind::kDimension, "operators live on different ground spaces");
  }
}

KernelOperator KernelOperator::operator+(const KernelOperator& other) const {
  require_same_space(other);
  return KernelOperator(space_, entries_ + other.entries_);
}

KernelOperator KernelOperator::operator-(const KernelOperator& other) const {
  require_same_space(other);
  return KernelOperator(space_, entries_ - other.entries_);
}

KernelOperator KernelOperator::operator*(double c) const { return KernelOperator(space_, entries_ * c); }

Subspace::Subspace(GroundSpacePtr space, std::vector<Vector> basis)
    : space_(std::move(space)), basis_(std::move(basis)) {
  for (const Vector& b : basis_) {
    if (b.size() != static_cast<Eigen::Index>(space_->size())) {
      throw Error(ErrorKind::kDimension, "subspace basis vector length differs from the ground space");
    }
  }
  const Matrix g = gram();
  orthonormal_ = !basis_.empty() &&
                 (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() <= 1e-12;
}

Subspace Subspace::orthonormalized() const {
  const Matrix q = orthonormal_counting_basis(basis_, *space_);
  const Vector inv_sqrt_w = space_->sqrt_weight_vector().cwiseInverse();
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(q.cols()));
  for (Eigen::Index k = 0; k < q.cols(); ++k) out.emplace_back(inv_sqrt_w.cwiseProduct(q.col(k)));
  return Subspace(space_, std::move(out));
}

Matrix Subspace::gram() const {
  const auto m = static_cast<Eigen::Index>(basis_.size());
  Matrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      g(i, j) = weighted_inner(basis_[static_cast<std::size_t>(i)], basis_[static_cast<std::size_t>(j)], *space_);
      g(j, i) = g(i, j);
    }
  }
  return g;
}

}  // namespace dpplab
