// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <thread>

#include "dpplab/conditioning.hpp"
#include "dpplab/deformations.hpp"
#include "dpplab/measure.hpp"
#include "dpplab/operator_core.hpp"
#include "dpplab/scaling_limits.hpp"
#include "dpplab/scenarios.hpp"
#include "dpplab/special_functions.hpp"
#include "dpplab/stats.hpp"

using namespace dpplab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

// Criteria 1 and 2 share one battery.
OracleBatteryResult battery() {
  static const OracleBatteryResult r = run_oracle_battery(OracleBatteryOptions{}, jobs());
  return r;
}

Outcome oracle_battery() {
  const OracleBatteryResult r = battery();
  std::ostringstream os;
  os << r.tv_pass << "/" << r.trials << " TV < 1e-9 (max " << r.max_tv << "), " << r.normalization_pass << "/"
     << r.trials << " normalization < 1e-10 (max " << r.max_normalization_error << "), " << r.seconds << " s";
  return {r.trials == 500 && r.tv_pass == r.trials && r.normalization_pass == r.trials && r.seconds < 30.0, os.str()};
}

Outcome projection_identity() {
  const OracleBatteryResult r = battery();
  std::ostringstream os;
  os << r.projection_pass << "/" << r.trials << " within 1e-9 (max " << r.max_projection_error << ")";
  return {r.trials == 500 && r.projection_pass == r.trials, os.str()};
}

Outcome perturbation() {
  const PerturbationScenario s;
  const PerturbationFamily fam = build_perturbation_family(s);
  const double limit_angle = angle(fam.v[0], fam.p);
  const ConvergenceReport r =
      perturbation_convergence_suite(fam.pn, fam.vn, fam.p, fam.v, fam.windows, s.min_angle, fam.labels);
  bool small = fam.labels.back() == 64;
  std::ostringstream os;
  os << "limit angle " << limit_angle << ", strictly decreasing " << (r.all_strictly_decreasing() ? "yes" : "no")
     << ", at n = " << fam.labels.back() << ":";
  for (std::size_t w = 0; w < fam.windows.size(); ++w) {
    const double d = r.distance(fam.labels.size() - 1, w);
    os << " " << r.window_ids()[w] << " " << d;
    small = small && d < 1e-6;
  }
  return {limit_angle >= 0.05 && r.all_strictly_decreasing() && small, os.str()};
}

Outcome exhaustion() {
  const ExhaustionScript s;
  const ExhaustionReport r = run_exhaustion_script(s, jobs());
  bool monotone = !r.rows.empty();
  bool angles = true;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    angles = angles && r.rows[i].angle_ok;
    if (i == 0) continue;
    for (std::size_t w = 0; w < r.probe_ids.size(); ++w) {
      monotone = monotone && r.rows[i].distances[w] < r.rows[i - 1].distances[w];
    }
  }
  const double probe = r.rows.empty() ? NAN : r.rows.back().probe_norm;
  std::ostringstream os;
  os << "grids 2^" << s.levels.front() << "..2^" << s.levels.back() << ", angles >= " << s.min_angle << " "
     << (angles ? "yes" : "no") << ", distances decreasing " << (monotone ? "yes" : "no") << ", final probe norm "
     << probe;
  return {angles && monotone && r.decreasing_once_angles_hold() && probe < 1e-3, os.str()};
}

Outcome heine_mehler() {
  const auto t0 = Clock::now();
  const GroundSpacePtr grid = default_hard_edge_grid();
  const Window window = Window::full(*grid, "(0;10]");
  bool ok = true;
  std::ostringstream os;
  for (double s : {0.0, 0.5, 2.0}) {
    const HeineMehlerReport r = heine_mehler_suite(s, {8, 16, 32, 64}, {window}, grid, jobs());
    const double residual = jacobi_orthonormality_residual(s, 20);
    const double crossover = bessel_crossover_discrepancy(s, kBesselCrossover - 1.0, kBesselCrossover + 1.0);
    ok = ok && r.strictly_decreasing() && residual < 1e-8 && crossover < 1e-9;
    os << "s=" << s << ": decreasing " << (r.strictly_decreasing() ? "yes" : "no") << " (n=64 " << r.rows.back().i1_distance
       << "), orthonormality " << residual << ", crossover " << crossover << "; ";
  }
  const double secs = seconds_since(t0);
  os << secs << " s";
  return {ok && secs < 120.0, os.str()};
}

Outcome sampler() {
  bool ok = true;
  std::ostringstream os;
  std::uint64_t seed = 1;
  for (const auto& [name, k] : sampler_cases()) {
    const DppDistribution d(k);
    const ConfigurationLaw law = brute_force_distribution(d);
    const auto batch = sample(d, seed++, 100000, jobs());
    std::vector<double> counts(law.probability.size(), 0.0);
    for (const Configuration& x : batch) counts[x.mask()] += 1.0;
    const double p = chi_square_gof(counts, law.probability).p_value;
    bool rank_ok = true;
    if (is_projection(k)) {
      const Index rank = projection_rank(k);
      for (const Configuration& x : batch) rank_ok = rank_ok && x.count() == rank;
    }
    ok = ok && p > 0.001 && rank_ok;
    os << name << ": p " << p << (is_projection(k) ? (rank_ok ? ", rank exact" : ", RANK MISMATCH") : "") << "; ";
  }
  return {ok, os.str()};
}

Outcome tightness() {
  const TightnessFamily fixed = fixed_tightness_family();
  const TightnessFamily drifting = drifting_tightness_family();
  const auto f_fixed = WeightFunction::constant(fixed.space, 1.0, WeightRole::kEmbedding);
  const TightnessReport a = tightness_report(fixed.kernels, f_fixed, fixed.tails, std::nullopt, {}, {}, fixed.labels);
  const auto f_drift = WeightFunction::constant(drifting.space, 1.0, WeightRole::kEmbedding);
  const TightnessReport b = tightness_report(drifting.kernels, f_drift, drifting.tails, std::nullopt, {}, {}, drifting.labels);
  std::ostringstream os;
  os << "fixed " << (a.verdict.tight ? "tight" : "not tight") << ", drifting " << (b.verdict.tight ? "tight" : "not tight")
     << "; Chebyshev";
  bool ok = a.verdict.tight && !b.verdict.tight;
  std::uint64_t seed = 100;
  int passed = 0;
  const auto cases = chebyshev_cases();
  for (const ChebyshevCase& c : cases) {
    const DppDistribution d(c.kernel);
    const ChebyshevCheck r = chebyshev_mass_bound_check(d, c.f, c.level, sample(d, seed++, 10000, jobs()));
    passed += r.pass ? 1 : 0;
  }
  os << " " << passed << "/" << cases.size() << " pass";
  return {ok && passed == static_cast<int>(cases.size()), os.str()};
}

Outcome weak_convergence() {
  const WeakConvergenceScenario s;
  const WeakConvergenceRun run = run_weak_convergence_scenario(s, true, jobs());
  const double ks = run.calibration->ks_distance;
  std::ostringstream os;
  os << "calibration KS " << ks << " over " << s.calibration_repetitions << " repetitions (need <= 0.05); statistics";
  for (const WeakConvergenceRow& row : run.sequence.rows) os << " " << row.statistic;
  os << ", strictly decreasing " << (run.sequence.statistic_decreasing ? "yes" : "no");
  return {ks <= 0.05 && run.sequence.statistic_decreasing, os.str()};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"conditioning oracle battery", oracle_battery},
      {"projection identity", projection_identity},
      {"perturbation suite", perturbation},
      {"exhaustion suite", exhaustion},
      {"Heine-Mehler suite", heine_mehler},
      {"sampler correctness", sampler},
      {"tightness and Chebyshev", tightness},
      {"weak-convergence calibration", weak_convergence},
  };
  int failed = 0;
  int id = 1;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id++, name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/8 criteria pass\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
