#include "dpplab/scenarios.hpp"

#include <cmath>

#include "dpplab/operator_core.hpp"
#include "dpplab/rng.hpp"
#include "dpplab/scaling_limits.hpp"

namespace dpplab {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Counting-form contraction with the given spectrum and a fixed, dense
// eigenbasis.
KernelOperator contraction_with_spectrum(const GroundSpacePtr& space, const std::vector<double>& spectrum) {
  const auto n = static_cast<Eigen::Index>(space->size());
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = std::sin(1.0 + 1.7 * static_cast<double>(i) + 0.9 * static_cast<double>(j * j));
  }
  const Matrix q = Eigen::HouseholderQR<Matrix>(a).householderQ();
  Vector lambda = Vector::Zero(n);
  for (std::size_t k = 0; k < spectrum.size() && static_cast<Eigen::Index>(k) < n; ++k) {
    lambda(static_cast<Eigen::Index>(k)) = spectrum[k];
  }
  return KernelOperator::from_counting(space, q * lambda.asDiagonal() * q.transpose());
}

}  // namespace

PerturbationFamily build_perturbation_family(const PerturbationScenario& s) {
  PerturbationFamily fam{GroundSpace::uniform(0.0, 1.0, s.grid_points, "uniform(0,1]"), {}, {},
                         KernelOperator::zero(GroundSpace::counting(1)), {}, {}, s.schedule};
  const GroundSpacePtr& sp = fam.space;
  const Vector one = sp->sample([](double) { return 1.0; });
  const Vector x = sp->sample([](double t) { return t; });
  const Vector bump = sp->sample([](double t) { return std::sin(3.0 * kPi * t); });
  const Vector x2 = sp->sample([](double t) { return t * t; });
  const Vector wobble = sp->sample([](double t) { return std::cos(5.0 * t); });
  fam.p = project_span({one, x}, sp);
  fam.v = {x2};
  for (long n : s.schedule) {
    const double e = s.amplitude * std::pow(static_cast<double>(n), -4.0);
    fam.pn.push_back(project_span({one, Vector(x + e * bump)}, sp));
    fam.vn.push_back({Vector(x2 + e * wobble)});
  }
  fam.windows = {Window::full(*sp, "(0;1]"), Window::interval(*sp, 0.0, 0.5, "(0;0.5]")};
  return fam;
}

TightnessFamily fixed_tightness_family(std::size_t members) {
  TightnessFamily fam;
  fam.space = GroundSpace::uniform(0.0, 20.0, 200, "uniform(0,20]");
  const GroundSpacePtr& sp = fam.space;
  const KernelOperator p =
      project_span({sp->sample([](double t) { return std::exp(-t); }), sp->sample([](double t) { return t * std::exp(-t); })}, sp);
  for (std::size_t a = 0; a < members; ++a) {
    fam.kernels.push_back(p);
    fam.labels.push_back("fixed " + std::to_string(a + 1));
  }
  fam.tails = {Window::interval(*sp, 10.0, 20.0, "[10;20]"), Window::interval(*sp, 15.0, 20.0, "[15;20]"),
               Window::interval(*sp, 18.0, 20.0, "[18;20]")};
  return fam;
}

TightnessFamily drifting_tightness_family() {
  TightnessFamily fam = fixed_tightness_family(0);
  const GroundSpacePtr& sp = fam.space;
  for (int c = 2; c <= 18; c += 2) {
    const double centre = static_cast<double>(c);
    fam.kernels.push_back(project_span({sp->sample([centre](double t) {
                                         const double d = (t - centre) / 0.3;
                                         return std::exp(-0.5 * d * d);
                                       })},
                                       sp));
    fam.labels.push_back("bump at " + std::to_string(c));
  }
  return fam;
}

std::vector<ChebyshevCase> chebyshev_cases() {
  std::vector<ChebyshevCase> out;
  {
    auto sp = GroundSpace::counting(3, "counting(3)");
    out.push_back({"identity on 3 points", KernelOperator::identity(sp),
                   WeightFunction::constant(sp, 1.0, WeightRole::kEmbedding), 2.0});
  }
  {
    auto sp = GroundSpace::counting(6, "counting(6)");
    const KernelOperator p = project_span(
        {sp->sample([](double t) { return 1.0 + 0.1 * t; }), sp->sample([](double t) { return std::cos(t); })}, sp);
    out.push_back({"rank-2 projection", p, WeightFunction::constant(sp, 1.0, WeightRole::kEmbedding), 1.0});
  }
  {
    auto sp = GroundSpace::graded(1.0, 10, 2.0, "graded(1,10,2)");
    const KernelOperator p = project_span({sp->sample([](double) { return 1.0; }), sp->sample([](double t) { return t; }),
                                           sp->sample([](double t) { return t * t; })},
                                          sp);
    out.push_back({"weighted rank-3 projection", p,
                   WeightFunction(sp, sp->sample([](double t) { return 0.5 + t; }), WeightRole::kEmbedding), 1.5});
  }
  {
    auto sp = GroundSpace::counting(8, "counting(8)");
    out.push_back({"contraction", contraction_with_spectrum(sp, {0.95, 0.8, 0.6, 0.4, 0.2, 0.1}),
                   WeightFunction::constant(sp, 1.0, WeightRole::kEmbedding), 2.0});
  }
  {
    auto sp = default_hard_edge_grid();
    out.push_back({"Bessel s=0 on (0;10]", bessel_kernel(0.0, sp),
                   WeightFunction::constant(sp, 1.0, WeightRole::kEmbedding), 1.0});
  }
  return out;
}

std::vector<std::pair<std::string, KernelOperator>> sampler_cases() {
  std::vector<std::pair<std::string, KernelOperator>> out;
  {
    auto sp = GroundSpace::counting(5, "counting(5)");
    out.emplace_back("rank-2 projection on 5 points",
                     project_span({sp->sample([](double t) { return 1.0 / t; }), sp->sample([](double t) { return std::sin(t); })}, sp));
  }
  {
    auto sp = GroundSpace::graded(2.0, 6, 1.5, "graded(2,6,1.5)");
    out.emplace_back("rank-3 projection on 6 graded points",
                     project_span({sp->sample([](double) { return 1.0; }), sp->sample([](double t) { return t; }),
                                   sp->sample([](double t) { return std::exp(-t); })},
                                  sp));
  }
  {
    auto sp = GroundSpace::counting(6, "counting(6)");
    out.emplace_back("contraction on 6 points", contraction_with_spectrum(sp, {0.9, 0.7, 0.5, 0.35, 0.2, 0.05}));
  }
  return out;
}

WeakConvergenceFamily build_weak_convergence_family(const WeakConvergenceScenario& s) {
  auto sp = GroundSpace::counting(8, "counting(8)");
  const KernelOperator p = project_span(
      {sp->sample([](double) { return 1.0; }), sp->sample([](double t) { return t; }), sp->sample([](double t) { return std::cos(t); })}, sp);
  const KernelOperator a = project_span({sp->sample([](double t) { return std::sin(t); }), sp->sample([](double t) { return t * t; }),
                                         sp->sample([](double) { return 1.0; })},
                                        sp);
  WeakConvergenceFamily fam{sp, p, {}, WeightFunction::constant(sp, 1.0, WeightRole::kEmbedding),
                            {Window::range(0, 4).indicator(*sp), Window::range(4, 8).indicator(*sp)}};
  for (long n : s.schedule) {
    const double e = 1.0 / static_cast<double>(n);
    fam.members.push_back(p * (1.0 - e) + a * e);
  }
  return fam;
}

WeakConvergenceRun run_weak_convergence_scenario(const WeakConvergenceScenario& s, bool calibrate, unsigned jobs) {
  const WeakConvergenceFamily fam = build_weak_convergence_family(s);
  const DppDistribution limit_law(fam.limit);
  CounterRng keys(s.seed, 1);
  const auto limit = sample(limit_law, keys(), s.batch_size, jobs);
  std::vector<std::vector<Configuration>> batches;
  for (const KernelOperator& k : fam.members) batches.push_back(sample(DppDistribution(k), keys(), s.batch_size, jobs));
  WeakConvergenceRun out{weak_convergence_test(batches, limit, fam.f, fam.phis, s.permutations, keys(), s.schedule, jobs),
                         std::nullopt};
  if (calibrate) {
    out.calibration = weak_convergence_calibration(limit_law, fam.f, fam.phis, s.calibration_batch,
                                                   s.calibration_repetitions, s.permutations, s.seed, jobs);
  }
  return out;
}

}  // namespace dpplab
