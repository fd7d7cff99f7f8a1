#include <doctest.h>

#include <cmath>

#include "dpplab/conditioning.hpp"
#include "dpplab/errors.hpp"
#include "dpplab/operator_core.hpp"
#include "helpers.hpp"

using namespace dpplab;

namespace {

KernelOperator half_half() {
  return KernelOperator::from_counting(GroundSpace::counting(2), Matrix::Constant(2, 2, 0.5));
}

WeightFunction g_of(const GroundSpacePtr& sp, std::vector<double> values) {
  return WeightFunction(sp, Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size())),
                        WeightRole::kConditioning);
}

}  // namespace

TEST_CASE("weight function invariants") {
  auto sp = GroundSpace::counting(2);
  CHECK_THROWS_AS(g_of(sp, {0.5, 1.5}), Error);
  CHECK_THROWS_AS(g_of(sp, {-0.1, 0.5}), Error);
  CHECK_NOTHROW(WeightFunction(sp, Eigen::Vector2d(3.0, 0.0), WeightRole::kEmbedding));
  CHECK_THROWS_AS(g_of(sp, {0.5}), Error);
}

TEST_CASE("psi_g examples") {
  auto sp = GroundSpace::counting(2);
  const WeightFunction one = WeightFunction::constant(sp, 1.0, WeightRole::kConditioning);
  for (std::uint64_t m = 0; m < 4; ++m) CHECK(psi_g(one, Configuration::from_mask(sp, m)) == 1.0);
  const WeightFunction g = g_of(sp, {0.5, 0.25});
  CHECK(psi_g(g, Configuration(sp, {})) == 1.0);
  CHECK(psi_g(g, Configuration(sp, {0, 1})) == doctest::Approx(0.125));
}

TEST_CASE("check_inducibility examples") {
  auto sp = GroundSpace::counting(2);
  const KernelOperator p = half_half();
  CHECK(check_inducibility(g_of(sp, {0.3, 0.8}), p).invertible);
  Matrix e1 = Matrix::Zero(2, 2);
  e1(0, 0) = 1.0;
  const Inducibility bad = check_inducibility(g_of(sp, {0.0, 1.0}), KernelOperator::from_counting(sp, e1));
  CHECK(bad.margin == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_FALSE(bad.invertible);
  const Inducibility hh = check_inducibility(g_of(sp, {1.0, 0.0}), p);
  CHECK(hh.invertible);
  CHECK(hh.margin == doctest::Approx(1.0 - std::sqrt(0.5)));
  CHECK(hh.norm_1mg_p == doctest::Approx(std::sqrt(0.5)));
  // requires a projection
  CHECK_THROWS_AS(check_inducibility(g_of(sp, {0.5, 0.5}), KernelOperator::identity(sp) * 0.5), Error);
}

TEST_CASE("induced_kernel examples") {
  auto sp = GroundSpace::counting(2);
  const KernelOperator p = half_half();
  CHECK((induced_kernel(WeightFunction::constant(sp, 1.0, WeightRole::kConditioning), p).entries() - p.entries())
            .cwiseAbs()
            .maxCoeff() < 1e-14);
  CHECK((induced_kernel(WeightFunction::constant(sp, 0.37, WeightRole::kConditioning), p).entries() - p.entries())
            .cwiseAbs()
            .maxCoeff() < 1e-14);
  Matrix expected(2, 2);
  expected << 2.0 / 3.0, std::sqrt(2.0) / 3.0, std::sqrt(2.0) / 3.0, 1.0 / 3.0;
  CHECK((induced_kernel(g_of(sp, {1.0, 0.5}), p).counting() - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("induced_kernel refuses a non-invertible transform") {
  auto sp = GroundSpace::counting(2);
  Matrix e1 = Matrix::Zero(2, 2);
  e1(0, 0) = 1.0;
  try {
    induced_kernel(g_of(sp, {0.0, 1.0}), KernelOperator::from_counting(sp, e1));
    FAIL("expected an inducibility error");
  } catch (const InducibilityError& e) {
    CHECK(e.margin() <= 1e-10);
    CHECK(e.kind() == ErrorKind::kInducibility);
  }
}

TEST_CASE("normalization constant examples") {
  auto sp = GroundSpace::counting(2);
  const KernelOperator p = half_half();
  CHECK(normalization_constant(WeightFunction::constant(sp, 1.0, WeightRole::kConditioning), p) == doctest::Approx(1.0));
  CHECK(normalization_constant(g_of(sp, {1.0, 0.5}), p) == doctest::Approx(0.75));
  CHECK(normalization_constant(WeightFunction::constant(sp, 0.0, WeightRole::kConditioning), p) == doctest::Approx(0.0));
}

TEST_CASE("induced_distribution examples") {
  auto sp = GroundSpace::counting(2);
  const KernelOperator p = half_half();
  const ConfigurationLaw same =
      brute_force_distribution(induced_distribution(WeightFunction::constant(sp, 1.0, WeightRole::kConditioning), p));
  CHECK(total_variation(same, brute_force_distribution(DppDistribution(p))) < 1e-14);
  const ConfigurationLaw law = brute_force_distribution(induced_distribution(g_of(sp, {1.0, 0.5}), p));
  CHECK(law(0b01) == doctest::Approx(2.0 / 3.0));
  CHECK(law(0b10) == doctest::Approx(1.0 / 3.0));
  try {
    induced_distribution(WeightFunction::constant(sp, 0.0, WeightRole::kConditioning), p);
    FAIL("expected conditioning to be impossible");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::kConditioningImpossible || e.kind() == ErrorKind::kInducibility));
  }
}

TEST_CASE("indicator g keeps the law inside the window") {
  auto sp = GroundSpace::counting(6);
  const KernelOperator p = project_span({sp->sample([](double x) { return 1.0 + 0.3 * x; })}, sp);
  const Window w = Window::range(1, 4);
  const WeightFunction g = WeightFunction::indicator(sp, w);
  const ConfigurationLaw law = brute_force_distribution(induced_distribution(g, p));
  const ConfigurationLaw oracle = reweight_law(brute_force_distribution(DppDistribution(p)), g);
  CHECK(total_variation(law, oracle) < 1e-12);
  for (std::uint64_t m = 0; m < law.probability.size(); ++m) {
    const Configuration x = Configuration::from_mask(sp, m);
    if (x.count_in(w) != x.count()) CHECK(law(m) < 1e-14);
  }
}

TEST_CASE("property: oracle equivalence, projection and normalization identities") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 120; ++t) {
    const Eigen::Index n = 2 + t % 9;
    const Eigen::Index r = 1 + t % std::min<Eigen::Index>(3, n);
    const Vector w = testing::random_weights(rng, n);
    const GroundSpacePtr sp = testing::space_with_weights(w);
    const KernelOperator p = KernelOperator::from_counting(sp, testing::random_projection(rng, n, r));
    Vector gv(n);
    for (Eigen::Index i = 0; i < n; ++i) gv(i) = 1.0 - 0.95 * u(rng);
    const WeightFunction g(sp, gv, WeightRole::kConditioning);

    const ConfigurationLaw base = brute_force_distribution(DppDistribution(p));
    // oracle: reweight by hand
    std::vector<double> weighted(base.probability.size());
    double z = 0.0;
    for (std::uint64_t m = 0; m < weighted.size(); ++m) {
      double psi = 1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (m >> i & 1) psi *= gv(i);
      }
      weighted[m] = psi * base(m);
      z += weighted[m];
    }
    for (double& x : weighted) x /= z;
    const ConfigurationLaw induced = brute_force_distribution(induced_distribution(g, p));
    REQUIRE(total_variation(induced, ConfigurationLaw{sp, weighted}) < 1e-9);
    REQUIRE(std::abs(normalization_constant(g, p) - z) < 1e-10);

    const KernelOperator b = induced_kernel(g, p);
    const Matrix bc = b.counting();
    REQUIRE((bc * bc - bc).cwiseAbs().maxCoeff() < 1e-9);
    std::vector<Vector> sqrt_g_basis;
    const Matrix q = range_basis(p);
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
      sqrt_g_basis.push_back(Vector(gv.cwiseSqrt().cwiseProduct(q.col(k)).cwiseQuotient(w.cwiseSqrt())));
    }
    REQUIRE((b.entries() - project_span(sqrt_g_basis, sp).entries()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("oracle battery summary") {
  OracleBatteryOptions o;
  o.trials = 60;
  const OracleBatteryResult r = run_oracle_battery(o, 2);
  CHECK(r.trials == 60);
  CHECK(r.tv_pass == 60);
  CHECK(r.normalization_pass == 60);
  CHECK(r.projection_pass == 60);
}

TEST_CASE("continuity in g") {
  auto sp = GroundSpace::uniform(0.0, 1.0, 30);
  const KernelOperator p = project_span({sp->sample([](double) { return 1.0; }), sp->sample([](double x) { return x; })}, sp);
  const WeightFunction g(sp, sp->sample([](double x) { return 0.2 + 0.6 * x; }), WeightRole::kConditioning);
  const KernelOperator limit = induced_kernel(g, p);
  const Window full = Window::full(*sp);
  double prev = INFINITY;
  for (int n = 1; n <= 64; n *= 2) {
    const Vector gn = g.values() + (Vector::Ones(30) - g.values()) / n;
    const WeightFunction gw(sp, gn, WeightRole::kConditioning);
    REQUIRE(check_inducibility(gw, p).margin >= 0.05);
    const double d = local_trace_norm(induced_kernel(gw, p) - limit, full, full).value;
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 0.02);
}

TEST_CASE("ideal property of the induced kernel") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 40; ++t) {
    const Eigen::Index n = 4 + t % 6;
    const Vector w = testing::random_weights(rng, n);
    const GroundSpacePtr sp = testing::space_with_weights(w);
    const KernelOperator p = KernelOperator::from_counting(sp, testing::random_projection(rng, n, 2));
    Vector gv(n), fv(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      gv(i) = 0.05 + 0.95 * u(rng);
      fv(i) = u(rng) < 0.4 ? 0.0 : 2.0 * u(rng);
    }
    const WeightFunction g(sp, gv, WeightRole::kConditioning);
    const Vector sf = fv.cwiseSqrt();
    const double lhs = (sf.asDiagonal() * induced_kernel(g, p).counting() * sf.asDiagonal()).norm();
    const double rhs = (sf.asDiagonal() * p.counting() * sf.asDiagonal()).norm();
    CHECK(lhs <= resolvent_norm(g, p) * rhs + 1e-12);
  }
}
