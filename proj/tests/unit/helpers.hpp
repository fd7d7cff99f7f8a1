#pragma once

#include <cmath>
#include <random>

#include "dpplab/kernel_operator.hpp"

namespace testing {

using dpplab::Matrix;
using dpplab::Vector;

inline Matrix random_symmetric(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> z;
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = z(rng);
  }
  return 0.5 * (a + a.transpose());
}

inline Vector random_weights(std::mt19937_64& rng, Eigen::Index n, double lo = 0.5, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = u(rng);
  return w;
}

inline dpplab::GroundSpacePtr space_with_weights(const Vector& w) {
  std::vector<double> pts, ws;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    pts.push_back(static_cast<double>(i + 1));
    ws.push_back(w(i));
  }
  return std::make_shared<const dpplab::GroundSpace>(pts, ws, "test");
}

// Counting-form contraction: random orthogonal eigenbasis, spectrum in [0, 1].
inline Matrix random_contraction(std::mt19937_64& rng, Eigen::Index n) {
  const Matrix q = Eigen::HouseholderQR<Matrix>(random_symmetric(rng, n)).householderQ();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) lambda(i) = u(rng);
  return q * lambda.asDiagonal() * q.transpose();
}

// Counting-form orthogonal projection of rank r.
inline Matrix random_projection(std::mt19937_64& rng, Eigen::Index n, Eigen::Index r) {
  std::normal_distribution<double> z;
  Matrix a(n, r);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) a(i, j) = z(rng);
  }
  const Matrix q = Eigen::HouseholderQR<Matrix>(a).householderQ() * Matrix::Identity(n, r);
  return q * q.transpose();
}

}  // namespace testing
