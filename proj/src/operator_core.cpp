#include "dpplab/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dpplab/errors.hpp"

namespace dpplab {
namespace {

void require_length(const Vector& v, const GroundSpace& space, const char* what) {
  if (v.size() != static_cast<Eigen::Index>(space.size())) {
    std::ostringstream os;
    os << what << ": vector of length " << v.size() << " on a " << space.size() << "-point space";
    throw Error(ErrorKind::kDimension, os.str());
  }
}

Matrix block(const Matrix& m, const Window& rows, const Window& cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (Index i = 0; i < rows.size(); ++i) {
    for (Index j = 0; j < cols.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(static_cast<Eigen::Index>(rows.indices()[i]), static_cast<Eigen::Index>(cols.indices()[j]));
    }
  }
  return out;
}

double symmetric_condition(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace

double weighted_inner(const Vector& u, const Vector& v, const GroundSpace& space) {
  require_length(u, space, "weighted_inner");
  require_length(v, space, "weighted_inner");
  double s = 0.0;
  for (Index i = 0; i < space.size(); ++i) {
    const auto e = static_cast<Eigen::Index>(i);
    s += u(e) * v(e) * space.weight(i);
  }
  return s;
}

double weighted_norm(const Vector& u, const GroundSpace& space) {
  return std::sqrt(std::max(0.0, weighted_inner(u, u, space)));
}

Vector spectrum(const KernelOperator& k) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(k.counting(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Norms norms(const KernelOperator& k) {
  const Matrix kc = k.counting();
  Norms out;
  out.trace = k.trace();
  if (kc.size() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> es(kc, Eigen::EigenvaluesOnly);
  const Vector abs_eig = es.eigenvalues().cwiseAbs();
  out.operator_norm = abs_eig.maxCoeff();
  out.hs_norm = kc.norm();
  out.trace_norm = abs_eig.sum();
  return out;
}

double trace_norm_of(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  if (std::min(m.rows(), m.cols()) <= 16) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

LocalTraceNorm local_trace_norm(const KernelOperator& k, const Window& a, const Window& b) {
  a.validate(*k.space());
  b.validate(*k.space());
  if (a.empty() || b.empty()) return {0.0, true};
  return {trace_norm_of(block(k.counting(), a, b)), false};
}

Matrix orthonormal_counting_basis(const std::vector<Vector>& basis, const GroundSpace& space) {
  if (basis.empty()) throw Error(ErrorKind::kArgument, "empty basis");
  const auto n = static_cast<Eigen::Index>(space.size());
  const auto m = static_cast<Eigen::Index>(basis.size());
  const Vector sw = space.sqrt_weight_vector();

  Matrix c(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Vector& b = basis[static_cast<std::size_t>(k)];
    require_length(b, space, "project_span");
    c.col(k) = sw.cwiseProduct(b);
    const double nrm = c.col(k).norm();
    if (!(nrm > 0.0)) {
      std::ostringstream os;
      os << "basis vector " << k << " is zero";
      throw DegenerateBasisError(static_cast<std::size_t>(k), std::numeric_limits<double>::infinity(), os.str());
    }
    c.col(k) /= nrm;
  }

  const Matrix gram = c.transpose() * c;
  for (Eigen::Index k = 1; k <= m; ++k) {
    const double cond = symmetric_condition(gram.topLeftCorner(k, k));
    if (cond > kDegenerateGramCondition) {
      std::ostringstream os;
      os << "basis vector " << (k - 1) << " is numerically dependent on its predecessors (Gram condition "
         << cond << ")";
      throw DegenerateBasisError(static_cast<std::size_t>(k - 1), cond, os.str());
    }
  }

  Matrix q = c;
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index k = 0; k < m; ++k) {
      for (Eigen::Index j = 0; j < k; ++j) q.col(k) -= q.col(j).dot(q.col(k)) * q.col(j);
      q.col(k).normalize();
    }
  }
  return q;
}

KernelOperator project_span(const std::vector<Vector>& basis, const GroundSpacePtr& space) {
  const Matrix q = orthonormal_counting_basis(basis, *space);
  return KernelOperator::from_counting(space, q * q.transpose());
}

ProjectionDefect projection_defect(const KernelOperator& p) {
  const Matrix pc = p.counting();
  ProjectionDefect d;
  if (pc.size() == 0) return d;
  d.idempotence = (pc * pc - pc).cwiseAbs().maxCoeff();
  d.symmetry = (pc - pc.transpose()).cwiseAbs().maxCoeff();
  return d;
}

bool is_projection(const KernelOperator& p, double tol) {
  const ProjectionDefect d = projection_defect(p);
  return d.idempotence < tol && d.symmetry < tol;
}

Matrix range_basis(const KernelOperator& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(p.counting());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
  }
  Matrix q(es.eigenvectors().rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) q.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
  return q;
}

Index projection_rank(const KernelOperator& p) {
  const Vector ev = spectrum(p);
  return static_cast<Index>((ev.array() > 0.5).count());
}

double angle_to_counting_basis(const Vector& v, const Matrix& q, const GroundSpace& space) {
  require_length(v, space, "angle");
  const Vector vc = space.sqrt_weight_vector().cwiseProduct(v);
  const double nv = vc.norm();
  if (!(nv > 0.0)) throw Error(ErrorKind::kDomain, "angle of the zero vector is undefined");
  Vector r = vc;
  if (q.cols() > 0) {
    // Two passes keep the residual accurate when v is nearly inside the span.
    r -= q * (q.transpose() * r);
    r -= q * (q.transpose() * r);
  }
  const double ratio = std::clamp(r.norm() / nv, 0.0, 1.0);
  return std::asin(ratio);
}

double angle(const Vector& v, const KernelOperator& p) {
  require_length(v, *p.space(), "angle");
  if (!(v.cwiseAbs().maxCoeff() > 0.0)) throw Error(ErrorKind::kDomain, "angle of the zero vector is undefined");
  if (!is_projection(p)) throw Error(ErrorKind::kContract, "angle: operator is not a projection");
  const Vector vc = p.space()->sqrt_weight_vector().cwiseProduct(v);
  const Vector r = vc - p.counting() * vc;
  const double ratio = std::clamp(r.norm() / vc.norm(), 0.0, 1.0);
  return std::asin(ratio);
}

bool is_positive_contraction(const KernelOperator& k, double tol) {
  const Vector ev = spectrum(k);
  return ev.minCoeff() >= -tol && ev.maxCoeff() <= 1.0 + tol;
}

double low_rank_local_trace_distance(const Matrix& a, const Matrix& b, const Window& w) {
  if (w.empty()) return 0.0;
  const auto rows = static_cast<Eigen::Index>(w.size());
  const Eigen::Index ra = a.cols();
  const Eigen::Index rb = b.cols();
  Matrix c(rows, ra + rb);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto src = static_cast<Eigen::Index>(w.indices()[static_cast<std::size_t>(i)]);
    if (ra > 0) c.row(i).head(ra) = a.row(src);
    if (rb > 0) c.row(i).tail(rb) = b.row(src);
  }
  Vector signs(ra + rb);
  signs.head(ra).setOnes();
  signs.tail(rb).setConstant(-1.0);
  if (ra + rb == 0) return 0.0;
  if (ra + rb >= rows) {
    const Matrix m = c * signs.asDiagonal() * c.transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::HouseholderQR<Matrix> qr(c);
  const Matrix r = qr.matrixQR().topRows(ra + rb).triangularView<Eigen::Upper>();
  const Matrix core = r * signs.asDiagonal() * r.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (core + core.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace dpplab
