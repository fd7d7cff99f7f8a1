#include "dpplab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "dpplab/errors.hpp"

namespace dpplab {

RecurrenceCoefficients jacobi_recurrence(double alpha, double beta, std::size_t n) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw Error(ErrorKind::kDomain, "Jacobi parameters must exceed -1");
  }
  RecurrenceCoefficients rc;
  rc.a.resize(n);
  rc.b.resize(n);
  const double ab = alpha + beta;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i);
    const double t = 2.0 * k + ab;
    if (i == 0) {
      rc.a[i] = (beta - alpha) / (ab + 2.0);
      rc.b[i] = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                         std::lgamma(ab + 2.0));
    } else {
      rc.a[i] = (beta * beta - alpha * alpha) / (t * (t + 2.0));
      if (i == 1) {
        rc.b[i] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
      } else {
        rc.b[i] = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
      }
    }
  }
  return rc;
}

QuadratureRule gauss_jacobi_rule(double alpha, double beta, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::kDomain, "quadrature rule needs at least one node");
  const RecurrenceCoefficients rc = jacobi_recurrence(alpha, beta, n);
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    jac(i, i) = rc.a[static_cast<std::size_t>(i)];
    if (i + 1 < m) {
      const double off = std::sqrt(rc.b[static_cast<std::size_t>(i + 1)]);
      jac(i, i + 1) = off;
      jac(i + 1, i) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    rule.weights[static_cast<std::size_t>(i)] = rc.b[0] * v0 * v0;
  }
  return rule;
}

}  // namespace dpplab
