#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include "dpplab/errors.hpp"
#include "dpplab/operator_core.hpp"
#include "dpplab/scaling_limits.hpp"
#include "dpplab/special_functions.hpp"

using namespace dpplab;

namespace {

constexpr double kPi = 3.14159265358979323846;

using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

// int_{-1}^{1} u^k (1-u)^s du, via t = 1 - u and the binomial expansion;
// extended precision because the sum alternates
long double jacobi_moment(double s, int k) {
  long double m = 0.0L;
  long double binom = 1.0L;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) binom *= static_cast<long double>(k - j + 1) / j;
    m += binom * (j % 2 ? -1.0L : 1.0L) * std::pow(2.0L, static_cast<long double>(s) + j + 1) / (s + j + 1);
  }
  return m;
}

// Orthonormal polynomial values by Gram-Schmidt (Cholesky) of monomials
// against the exact moments.
LVector gram_schmidt_values(double s, int count, double u) {
  LMatrix g(count, count);
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) g(i, j) = jacobi_moment(s, i + j);
  }
  const LMatrix l = Eigen::LLT<LMatrix>(g).matrixL();
  // p = L^{-1} (1, u, ..., u^{count-1})
  LVector mono(count);
  for (int i = 0; i < count; ++i) mono(i) = std::pow(static_cast<long double>(u), i);
  return l.triangularView<Eigen::Lower>().solve(mono);
}

double j_half(double z) { return std::sqrt(2.0 / (kPi * z)) * std::sin(z); }
double j_three_halves(double z) { return std::sqrt(2.0 / (kPi * z)) * (std::sin(z) / z - std::cos(z)); }
double dj_half(double z) { return std::sqrt(2.0 / (kPi * z)) * (std::cos(z) - std::sin(z) / (2.0 * z)); }

double trig_kernel(double x, double y) {
  const double a = std::sqrt(x), b = std::sqrt(y);
  if (x == y) {
    return (j_half(a) * j_half(a) + j_three_halves(a) * j_three_halves(a) - (1.0 / a) * j_half(a) * j_three_halves(a)) / 4.0;
  }
  return (j_half(a) * b * dj_half(b) - j_half(b) * a * dj_half(a)) / (2.0 * (x - y));
}

}  // namespace

TEST_CASE("Jacobi normalization and Legendre values") {
  for (double s : {0.0, 0.5, 2.0, -0.5}) {
    const double p0 = 1.0 / std::sqrt(std::pow(2.0, s + 1) / (s + 1));
    for (double u : {-0.9, 0.0, 0.7}) CHECK(jacobi_polynomials(s, 1, u)[0] == doctest::Approx(p0).epsilon(1e-14));
  }
  for (double u : {-1.0, -0.3, 0.2, 1.0}) {
    const auto p = jacobi_polynomials(0.0, 3, u);
    CHECK(p[1] == doctest::Approx(std::sqrt(1.5) * u).epsilon(1e-14));
    CHECK(p[2] == doctest::Approx(std::sqrt(2.5) * (3.0 * u * u - 1.0) / 2.0).epsilon(1e-13));
  }
}

TEST_CASE("recurrence against Gram-Schmidt of monomials") {
  for (double s : {0.0, 0.5, 2.0}) {
    for (double u : {-0.95, -0.2, 0.4, 0.99}) {
      const auto p = jacobi_polynomials(s, 6, u);
      const LVector gs = gram_schmidt_values(s, 6, u);
      for (int k = 0; k < 6; ++k) CHECK(std::abs(p[static_cast<std::size_t>(k)] - static_cast<double>(gs(k))) < 1e-10);
    }
  }
}

TEST_CASE("quadrature orthonormality up to degree 20") {
  for (double s : {0.0, 0.5, 2.0}) CHECK(jacobi_orthonormality_residual(s, 20) < 1e-8);
}

TEST_CASE("derivatives against central differences") {
  const double h = 1e-6;
  for (double u : {-0.5, 0.3}) {
    const auto d = jacobi_polynomial_derivatives(0.5, 8, u);
    const auto a = jacobi_polynomials(0.5, 8, u + h);
    const auto b = jacobi_polynomials(0.5, 8, u - h);
    for (std::size_t k = 0; k < 8; ++k) CHECK(d[k] == doctest::Approx((a[k] - b[k]) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("Christoffel-Darboux closed form against the sum") {
  for (double s : {0.0, 0.5, 2.0}) {
    for (std::size_t n : {2u, 7u, 20u}) {
      for (auto [u, v] : {std::pair{0.1, -0.4}, std::pair{0.9, 0.85}, std::pair{-0.99, 0.5}}) {
        CHECK(std::abs(christoffel_darboux_closed(s, n, u, v) - christoffel_darboux_sum(s, n, u, v)) < 1e-9);
      }
      // diagonal limit
      CHECK(christoffel_darboux_closed(s, n, 0.3, 0.3) == doctest::Approx(christoffel_darboux_sum(s, n, 0.3, 0.3)).epsilon(1e-10));
    }
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(jacobi_polynomials(-1.0, 3, 0.0), Error);
  CHECK_THROWS_AS(jacobi_polynomials(-1.5, 3, 0.0), Error);
  CHECK_THROWS_AS(jacobi_polynomials(0.0, 3, 1.2), Error);
  CHECK_THROWS_AS(bessel_kernel_value(-1.0, 1.0, 2.0), Error);
  CHECK_THROWS_AS(bessel_kernel(-2.0, default_hard_edge_grid()), Error);
  // n = 2 covers (0, 16], the grid reaches 20
  CHECK_THROWS_AS(jacobi_cd_kernel(0.0, 2, GroundSpace::uniform(0.0, 20.0, 10)), Error);
  CHECK_NOTHROW(jacobi_cd_kernel(0.0, 3, GroundSpace::uniform(0.0, 20.0, 10)));
}

TEST_CASE("Bessel J against an independent implementation") {
  for (double nu : {0.0, 0.5, 1.0, 2.0, 2.5, -0.5}) {
    for (double z : {1e-3, 0.5, 3.0, 11.9, 12.1, 20.0, 45.0}) {
      CAPTURE(nu);
      CAPTURE(z);
      CHECK(std::abs(bessel_j(nu, z) - boost::math::cyl_bessel_j(nu, z)) < 1e-10);
    }
  }
  for (double s : {0.0, 0.5, 2.0}) CHECK(bessel_crossover_discrepancy(s, 11.0, 13.0) < 1e-9);
}

TEST_CASE("s = 1/2 Bessel kernel in trigonometric form") {
  for (double x : {0.3, 2.0, 50.0, 150.0, 400.0}) {
    for (double y : {0.3, 1.1, 90.0, 400.0}) {
      CAPTURE(x);
      CAPTURE(y);
      CHECK(std::abs(bessel_kernel_value(0.5, x, y) - trig_kernel(x, y)) < 1e-10);
    }
  }
}

TEST_CASE("Bessel kernel symmetry and small-x diagonal") {
  for (double s : {0.0, 0.5, 2.0}) {
    CHECK(bessel_kernel_value(s, 0.7, 5.0) == bessel_kernel_value(s, 5.0, 0.7));
    // leading term x^s / (4^{s+1} Gamma(s+1) Gamma(s+2))
    const double x = 1e-6;
    const double lead = std::pow(x, s) / (std::pow(4.0, s + 1) * std::tgamma(s + 1) * std::tgamma(s + 2));
    CHECK(bessel_kernel_value(s, x, x) == doctest::Approx(lead).epsilon(1e-4));
  }
}

TEST_CASE("both kernel families are positive contractions") {
  const GroundSpacePtr grid = default_hard_edge_grid();
  for (double s : {0.0, 0.5, 2.0}) {
    CHECK(is_positive_contraction(bessel_kernel(s, grid), 1e-8));
    for (std::size_t n : {8u, 16u, 32u, 64u}) CHECK(is_positive_contraction(jacobi_cd_kernel(s, n, grid), 1e-8));
  }
}

TEST_CASE("rescaled CD kernel is a rank-n projection on its whole range") {
  // s = 0: the kernel is a polynomial of degree 2n - 2 in each variable, so a
  // Gauss-Legendre rule with enough nodes reproduces it exactly
  const std::size_t n = 5;
  const GroundSpacePtr grid = GroundSpace::gauss_legendre(0.0, 4.0 * n * n, 12);
  const KernelOperator k = jacobi_cd_kernel(0.0, n, grid);
  const Matrix c = k.counting();
  CHECK((c * c - c).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(k.trace() == doctest::Approx(static_cast<double>(n)).epsilon(1e-10));
  CHECK(projection_rank(k) == static_cast<Index>(n));
  // window trace bounded by n
  const KernelOperator part = jacobi_cd_kernel(0.0, n, GroundSpace::gauss_legendre(0.0, 10.0, 40));
  CHECK(part.trace() < static_cast<double>(n));
}

TEST_CASE("CD diagonal converges to the Bessel diagonal") {
  for (double s : {0.0, 2.0}) {
    const GroundSpacePtr grid = GroundSpace::gauss_legendre(0.0, 10.0, 20);
    const KernelOperator limit = bessel_kernel(s, grid);
    double prev = INFINITY;
    for (std::size_t n : {8u, 16u, 32u}) {
      const KernelOperator k = jacobi_cd_kernel(s, n, grid);
      double err = 0.0;
      for (Eigen::Index i = 0; i < 20; ++i) err = std::max(err, std::abs(k.entries()(i, i) - limit.entries()(i, i)));
      CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("Heine-Mehler suite") {
  const GroundSpacePtr grid = default_hard_edge_grid();
  const Window full = Window::full(*grid, "(0;10]");
  const HeineMehlerReport r = heine_mehler_suite(0.0, {8, 16, 32, 64}, {full, Window::interval(*grid, 0.0, 2.0, "(0;2]")}, grid);
  CHECK(r.strictly_decreasing());
  CHECK(r.rows.size() == 8);
  CHECK(std::isnan(r.rows.front().ratio_to_previous));
  CHECK(r.to_csv().rfind("s,n,window_id,i1_distance,ratio_to_previous", 0) == 0);
  // a window with no grid points carries zero distance
  const HeineMehlerReport empty = heine_mehler_suite(0.0, {8, 16}, {Window({}, "beyond")}, grid);
  for (const HeineMehlerRow& row : empty.rows) CHECK(row.i1_distance == 0.0);
  CHECK_THROWS_AS(heine_mehler_suite(0.0, {16, 8}, {full}, grid), Error);
}
