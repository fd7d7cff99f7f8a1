#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dpplab/convergence.hpp"
#include "dpplab/errors.hpp"
#include "dpplab/operator_core.hpp"
#include "helpers.hpp"

using namespace dpplab;

namespace {

GroundSpacePtr weighted(std::vector<double> w) {
  std::vector<double> pts;
  for (std::size_t i = 0; i < w.size(); ++i) pts.push_back(static_cast<double>(i));
  return std::make_shared<const GroundSpace>(pts, w, "w");
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("ground space invariants") {
  CHECK_THROWS_AS(GroundSpace({}, {}, "empty"), Error);
  CHECK_THROWS_AS(GroundSpace({0.0, 0.0}, {1.0, 1.0}, "flat"), Error);
  CHECK_THROWS_AS(GroundSpace({0.0, 1.0}, {1.0, 0.0}, "zero weight"), Error);
  auto u = GroundSpace::uniform(0.0, 1.0, 4);
  CHECK(u->point(0) == doctest::Approx(0.125));
  CHECK(u->weight_vector().sum() == doctest::Approx(1.0));
  auto gl = GroundSpace::gauss_legendre(0.0, 2.0, 12);
  // x^5 integrates exactly: 2^6 / 6
  CHECK(gl->sample([](double x) { return std::pow(x, 5); }).dot(gl->weight_vector()) ==
        doctest::Approx(64.0 / 6.0).epsilon(1e-13));
  auto g = GroundSpace::graded(1.0, 16, 3.0);
  CHECK(g->weight_vector().sum() == doctest::Approx(1.0));
  CHECK(g->weight(0) < g->weight(15));
}

TEST_CASE("windows") {
  auto sp = GroundSpace::counting(5);
  const Window a = Window::range(1, 3);
  CHECK(a.size() == 2);
  CHECK(a.is_subset_of(Window::full(*sp)));
  CHECK(a.complement(*sp).size() == 3);
  CHECK(Window({4, 1, 1}, "dup").indices() == std::vector<Index>{1, 4});
  CHECK_THROWS_AS(Window::range(3, 9).validate(*sp), Error);
  CHECK(Window::interval(*sp, 10.0, 20.0).empty());
}

TEST_CASE("weighted_inner examples") {
  CHECK(weighted_inner(vec({1, 0}), vec({1, 0}), *weighted({2, 3})) == 2.0);
  CHECK(weighted_inner(vec({1, 1}), vec({1, -1}), *weighted({1, 1})) == 0.0);
  CHECK(weighted_inner(vec({1, 2}), vec({3, 1}), *weighted({0.5, 0.25})) == doctest::Approx(2.0));
  CHECK_THROWS_AS(weighted_inner(vec({1, 2, 3}), vec({3, 1}), *weighted({0.5, 0.25})), Error);
}

TEST_CASE("kernel symmetry is enforced") {
  auto sp = GroundSpace::counting(2);
  Matrix m(2, 2);
  m << 1.0, 0.5, 0.5 + 1e-12, 1.0;
  const KernelOperator k(sp, m);
  CHECK(k.entries()(0, 1) == k.entries()(1, 0));
  m(1, 0) = 0.7;
  CHECK_THROWS_AS(KernelOperator(sp, m), Error);
}

TEST_CASE("norms examples") {
  auto sp = GroundSpace::counting(3);
  const Norms z = norms(KernelOperator::zero(sp));
  CHECK(z.operator_norm == 0.0);
  CHECK(z.hs_norm == 0.0);
  CHECK(z.trace_norm == 0.0);
  CHECK(z.trace == 0.0);
  const Norms id = norms(KernelOperator::identity(sp));
  CHECK(id.operator_norm == doctest::Approx(1.0));
  CHECK(id.hs_norm == doctest::Approx(std::sqrt(3.0)));
  CHECK(id.trace_norm == doctest::Approx(3.0));
  CHECK(id.trace == doctest::Approx(3.0));
  Matrix f(3, 1);
  f << 0.6, 0.0, 0.8;
  const Norms r1 = norms(KernelOperator::from_counting_factor(sp, f));
  CHECK(r1.operator_norm == doctest::Approx(1.0));
  CHECK(r1.hs_norm == doctest::Approx(1.0));
  CHECK(r1.trace_norm == doctest::Approx(1.0));
}

TEST_CASE("identity kernel is delta over weight") {
  auto sp = weighted({0.5, 2.0});
  const KernelOperator id = KernelOperator::identity(sp);
  CHECK(id.entries()(0, 0) == doctest::Approx(2.0));
  CHECK(id.counting().isApprox(Matrix::Identity(2, 2)));
  CHECK(id.trace() == doctest::Approx(2.0));
}

TEST_CASE("property: norm ordering on random symmetric operators") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(t % 9);
    const Vector w = testing::random_weights(rng, n);
    const KernelOperator k = KernelOperator::from_counting(testing::space_with_weights(w), testing::random_symmetric(rng, n));
    const Norms nm = norms(k);
    REQUIRE(nm.operator_norm <= nm.hs_norm + 1e-12);
    REQUIRE(nm.hs_norm <= nm.trace_norm + 1e-12);
  }
}

TEST_CASE("positive operator: trace equals trace norm") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const Vector w = testing::random_weights(rng, 6);
    const KernelOperator k = KernelOperator::from_counting(testing::space_with_weights(w), testing::random_contraction(rng, 6));
    const Norms nm = norms(k);
    CHECK(nm.trace == doctest::Approx(nm.trace_norm).epsilon(1e-12));
  }
}

TEST_CASE("property: HS trace inequality") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 300; ++t) {
    const Matrix k1 = testing::random_symmetric(rng, 6);
    const Matrix a = testing::random_symmetric(rng, 6);
    const Matrix k2 = testing::random_symmetric(rng, 6);
    const double lhs = std::abs((k1.transpose() * a * k2).trace());
    const double opa = Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
    REQUIRE(lhs <= k1.norm() * opa * k2.norm() + 1e-10);
  }
}

TEST_CASE("local_trace_norm") {
  auto sp = GroundSpace::counting(5);
  const KernelOperator id = KernelOperator::identity(sp);
  CHECK(local_trace_norm(id, Window::range(0, 2), Window::range(0, 2)).value == doctest::Approx(2.0));

  Matrix f = Matrix::Zero(5, 1);
  f(0, 0) = 1.0;
  const KernelOperator e1 = KernelOperator::from_counting_factor(sp, f);
  CHECK(local_trace_norm(e1, Window::range(2, 5), Window::range(2, 5)).value == 0.0);

  const LocalTraceNorm empty = local_trace_norm(id, Window({}, "none"), Window::range(0, 5));
  CHECK(empty.empty_window);
  CHECK(empty.value == 0.0);

  // oracle: explicit block, singular values summed in the test
  std::mt19937_64 rng(3);
  const Vector w = testing::random_weights(rng, 10);
  const GroundSpacePtr ws = testing::space_with_weights(w);
  const KernelOperator k(ws, testing::random_symmetric(rng, 10));
  const Matrix c = k.counting();
  const Window half = Window::range(0, 5);
  const Window other = Window::range(3, 10);
  const double oracle = Eigen::JacobiSVD<Matrix>(c.block(0, 3, 5, 7)).singularValues().sum();
  CHECK(local_trace_norm(k, half, other).value == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(local_trace_norm(k, Window::full(*ws), Window::full(*ws)).value ==
        doctest::Approx(norms(k).trace_norm).epsilon(1e-12));
}

TEST_CASE("property: local trace norm is monotone in the window for positive operators") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const KernelOperator k = KernelOperator::from_counting(GroundSpace::counting(8), testing::random_contraction(rng, 8));
    const Index lo = static_cast<Index>(t % 4);
    const Window w1 = Window::range(lo, 5);
    const Window w2 = Window::range(0, 8);
    REQUIRE(local_trace_norm(k, w1, w1).value <= local_trace_norm(k, w2, w2).value + 1e-12);
  }
}

TEST_CASE("project_span examples") {
  auto sp = GroundSpace::counting(2);
  const KernelOperator p1 = project_span({vec({1, 0})}, sp);
  CHECK((p1.counting() - Matrix(Eigen::Vector2d(1, 0).asDiagonal())).cwiseAbs().maxCoeff() < 1e-15);
  const KernelOperator p2 = project_span({vec({1, 0}), vec({0, 1})}, sp);
  CHECK((p2.counting() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  const KernelOperator p3 = project_span({vec({1, 1})}, sp);
  CHECK((p3.counting() - Matrix::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("project_span rejects degenerate bases and names the vector") {
  auto sp = GroundSpace::counting(4);
  CHECK_THROWS_AS(project_span({vec({0, 0, 0, 0})}, sp), Error);
  try {
    project_span({vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({1, 1e-14, 0, 0})}, sp);
    FAIL("expected a degenerate-basis error");
  } catch (const DegenerateBasisError& e) {
    CHECK(e.index() == 2);
    CHECK(e.kind() == ErrorKind::kDegenerateBasis);
  }
  // disparate norms alone are not degenerate
  CHECK_NOTHROW(project_span({vec({1e8, 0, 0, 0}), vec({0, 1e-8, 0, 0})}, sp));
}

TEST_CASE("property: projections from project_span") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> z;
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = 3 + t % 8;
    const Vector w = testing::random_weights(rng, n);
    const GroundSpacePtr sp = testing::space_with_weights(w);
    std::vector<Vector> basis;
    const int r = 1 + t % static_cast<int>(n - 1);
    for (int k = 0; k < r; ++k) {
      Vector v(n);
      for (Eigen::Index i = 0; i < n; ++i) v(i) = z(rng);
      basis.push_back(v);
    }
    const KernelOperator p = project_span(basis, sp);
    const Matrix c = p.counting();
    REQUIRE((c * c - c).cwiseAbs().maxCoeff() < 1e-10);
    REQUIRE((c - c.transpose()).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(projection_rank(p) == static_cast<Index>(r));
    // range check: every basis vector is fixed by P (mu-relative action P v = K W v)
    for (const Vector& v : basis) {
      const Vector pv = p.entries() * w.cwiseProduct(v);
      REQUIRE((pv - v).norm() < 1e-9 * v.norm());
    }
  }
}

TEST_CASE("angle examples and properties") {
  auto sp = GroundSpace::counting(2);
  const KernelOperator p = project_span({vec({1, 0})}, sp);
  CHECK(angle(vec({3, 0}), p) == doctest::Approx(0.0));
  CHECK(angle(vec({0, 2}), p) == doctest::Approx(std::numbers::pi / 2));
  CHECK(angle(vec({1, 1}), p) == doctest::Approx(std::numbers::pi / 4));
  CHECK_THROWS_AS(angle(vec({0, 0}), p), Error);
  CHECK_THROWS_AS(angle(vec({1, 1}), KernelOperator::identity(sp) * 0.5), Error);
  try {
    angle(vec({0, 0}), p);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDomain);
  }
  try {
    angle(vec({1, 1}), KernelOperator::identity(sp) * 0.5);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kContract);
  }

  std::mt19937_64 rng(4);
  std::normal_distribution<double> z;
  const Vector w = testing::random_weights(rng, 7);
  const GroundSpacePtr ws = testing::space_with_weights(w);
  const KernelOperator q = project_span({ws->sample([](double x) { return x; }), ws->sample([](double) { return 1.0; })}, ws);
  for (int t = 0; t < 50; ++t) {
    Vector v(7);
    for (Eigen::Index i = 0; i < 7; ++i) v(i) = z(rng);
    const double c = (t % 2 ? -1.0 : 1.0) * std::exp(z(rng) * 3.0);
    CHECK(angle(Vector(c * v), q) == doctest::Approx(angle(v, q)).epsilon(1e-12));
  }
}

TEST_CASE("convergence_report examples") {
  auto sp = GroundSpace::counting(6);
  const KernelOperator target = project_span({sp->sample([](double x) { return x; })}, sp);
  CHECK_THROWS_AS(convergence_report({}, target, {Window::full(*sp)}), Error);

  const ConvergenceReport same = convergence_report({target, target, target}, target, {Window::full(*sp)});
  for (const ConvergenceRow& r : same.rows()) CHECK(r.distance == 0.0);

  std::vector<KernelOperator> seq;
  for (int n = 1; n <= 5; ++n) seq.push_back(target + KernelOperator::identity(sp) * (1.0 / n));
  const Window w = Window::range(0, 3, "first three");
  const ConvergenceReport rep = convergence_report(seq, target, {w});
  for (std::size_t i = 0; i < 5; ++i) CHECK(rep.distance(i, 0) == doctest::Approx(3.0 / static_cast<double>(i + 1)));
  CHECK(rep.all_strictly_decreasing());
  CHECK(rep.verdicts()[0].last == doctest::Approx(0.6));
  const std::string csv = rep.to_csv();
  CHECK(csv.rfind("n,window_id,distance\n", 0) == 0);
  CHECK(csv.find("1,first three,3") != std::string::npos);
}

TEST_CASE("csv_field quotes separators") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("[0,1]") == "\"[0,1]\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("low-rank windowed trace distance matches the dense block") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  Matrix a(30, 3), b(30, 4);
  for (Eigen::Index i = 0; i < 30; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) a(i, j) = z(rng);
    for (Eigen::Index j = 0; j < 4; ++j) b(i, j) = z(rng);
  }
  const Window w = Window::range(5, 22);
  const Matrix d = a * a.transpose() - b * b.transpose();
  const double oracle = Eigen::JacobiSVD<Matrix>(d.block(5, 5, 17, 17)).singularValues().sum();
  CHECK(low_rank_local_trace_distance(a, b, w) == doctest::Approx(oracle).epsilon(1e-11));
}
