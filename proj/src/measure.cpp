#include "dpplab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "dpplab/convergence.hpp"
#include "dpplab/errors.hpp"
#include "dpplab/operator_core.hpp"
#include "dpplab/parallel.hpp"
#include "dpplab/rng.hpp"
#include "dpplab/stats.hpp"

namespace dpplab {
namespace {

void require_space(const GroundSpacePtr& a, const GroundSpacePtr& b, const char* what) {
  if (a.get() != b.get() && !(*a == *b)) throw Error(ErrorKind::kDimension, std::string(what) + ": ground spaces differ");
}

// Sequential angles of counting-form vectors against an orthonormal start
// basis, extended by each residual in turn.
std::vector<double> sequential_angles(Matrix q, const std::vector<Vector>& vs) {
  std::vector<double> out;
  for (const Vector& v : vs) {
    const double nv = v.norm();
    if (nv == 0.0) throw Error(ErrorKind::kDomain, "tightness: zero extra vector");
    Vector r = v / nv;
    for (int pass = 0; pass < 2; ++pass) {
      if (q.cols() > 0) r -= q * (q.transpose() * r);
    }
    const double rn = r.norm();
    out.push_back(std::asin(std::min(1.0, rn)));
    if (rn > 1e-14) {
      q.conservativeResize(q.rows(), q.cols() + 1);
      q.col(q.cols() - 1) = r / rn;
    }
  }
  return out;
}

}  // namespace

FiniteMeasure sigma_f(const Configuration& x, const WeightFunction& f) {
  require_space(x.space(), f.space(), "sigma_f");
  Vector m = Vector::Zero(static_cast<Eigen::Index>(x.space()->size()));
  for (Index i : x.occupied()) m(static_cast<Eigen::Index>(i)) = f(i);
  return FiniteMeasure(x.space(), std::move(m));
}

double int_phi(const FiniteMeasure& eta, const Vector& phi) {
  if (phi.size() != eta.masses().size()) throw Error(ErrorKind::kDimension, "int_phi: length mismatch");
  return phi.dot(eta.masses());
}

std::string TightnessReport::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17) << "member,quantity,window_id,value\n";
  for (const TightnessRow& r : rows) {
    const std::string m = csv_field(r.label);
    os << m << ",trace,," << r.trace << '\n';
    for (std::size_t t = 0; t < tail_ids.size(); ++t) {
      os << m << ",tail_trace," << csv_field(tail_ids[t]) << ',' << r.tail_traces[t] << '\n';
    }
    if (r.margin) os << m << ",margin,," << *r.margin << '\n';
    for (std::size_t k = 0; k < r.vector_masses.size(); ++k) {
      os << m << ",vector_mass_" << k + 1 << ",," << r.vector_masses[k] << '\n';
      for (std::size_t t = 0; t < tail_ids.size(); ++t) {
        os << m << ",vector_tail_mass_" << k + 1 << ',' << csv_field(tail_ids[t]) << ','
           << r.vector_tail_masses[k][t] << '\n';
      }
      os << m << ",angle_" << k + 1 << ",," << r.angles[k] << '\n';
    }
  }
  os << "verdict,bounded_trace,," << verdict.bounded_trace << '\n'
     << "verdict,vanishing_tail,," << verdict.vanishing_tail << '\n'
     << "verdict,uniform_margin,," << verdict.uniform_margin << '\n'
     << "verdict,angle_bound,," << verdict.angle_bound << '\n'
     << "verdict,tight,," << verdict.tight << '\n';
  return os.str();
}

TightnessReport tightness_report(const std::vector<KernelOperator>& kernels, const WeightFunction& f,
                                 const std::vector<Window>& tail_windows, const std::optional<WeightFunction>& g,
                                 const std::vector<std::vector<Vector>>& extra_vectors,
                                 const TightnessOptions& options, std::vector<std::string> labels) {
  if (kernels.empty()) throw Error(ErrorKind::kArgument, "tightness_report: empty family");
  if (!labels.empty() && labels.size() != kernels.size()) {
    throw Error(ErrorKind::kArgument, "tightness_report: one label per member required");
  }
  if (labels.empty()) {
    for (std::size_t a = 0; a < kernels.size(); ++a) labels.push_back("member " + std::to_string(a + 1));
  }
  if (!extra_vectors.empty() && extra_vectors.size() != kernels.size()) {
    throw Error(ErrorKind::kArgument, "tightness_report: one vector list per member required");
  }
  const GroundSpacePtr& space = kernels.front().space();
  require_space(space, f.space(), "tightness_report");
  if (g) require_space(space, g->space(), "tightness_report");
  for (const Window& w : tail_windows) w.validate(*space);

  TightnessReport rep;
  for (std::size_t t = 0; t < tail_windows.size(); ++t) {
    const std::string& d = tail_windows[t].description();
    rep.tail_ids.push_back(d.empty() ? "tail " + std::to_string(t + 1) : d);
  }
  rep.sup_tail_traces.assign(tail_windows.size(), 0.0);

  const Vector w = space->weight_vector();
  const Vector sw = space->sqrt_weight_vector();
  const Vector& fv = f.values();
  for (std::size_t a = 0; a < kernels.size(); ++a) {
    const KernelOperator& k = kernels[a];
    k.require_same_space(kernels.front());
    if (!is_positive_contraction(k, options.contraction_tolerance)) {
      throw Error(ErrorKind::kContract, "tightness_report: " + labels[a] + " is not a positive contraction");
    }
    TightnessRow row;
    row.label = labels[a];
    // diagonal of sqrt f K sqrt f in mu-trace form: f(x) K(x, x) w_x
    const Vector diag = fv.cwiseProduct(k.entries().diagonal()).cwiseProduct(w).cwiseMax(0.0);
    row.trace = diag.sum();
    for (const Window& tw : tail_windows) {
      double s = 0.0;
      for (Index i : tw.indices()) s += diag(static_cast<Eigen::Index>(i));
      row.tail_traces.push_back(s);
    }
    if (g) {
      const Matrix c = k.counting();
      const Vector one_minus_g = (Vector::Ones(g->values().size()) - g->values());
      const Matrix m = one_minus_g.asDiagonal() * c;
      const double norm = m.rows() == 0 ? 0.0 : Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
      row.margin = 1.0 - norm;
    }
    if (!extra_vectors.empty()) {
      const std::vector<Vector>& vs = extra_vectors[a];
      std::vector<Vector> counting_vs;
      for (const Vector& v : vs) {
        if (v.size() != w.size()) throw Error(ErrorKind::kDimension, "tightness_report: vector length mismatch");
        const Vector mass = fv.cwiseProduct(v.cwiseAbs2()).cwiseProduct(w);
        row.vector_masses.push_back(mass.sum());
        std::vector<double> tails;
        for (const Window& tw : tail_windows) {
          double s = 0.0;
          for (Index i : tw.indices()) s += mass(static_cast<Eigen::Index>(i));
          tails.push_back(s);
        }
        row.vector_tail_masses.push_back(std::move(tails));
        counting_vs.push_back(v.cwiseProduct(sw));
      }
      const Matrix start = is_projection(k) ? range_basis(k) : Matrix(w.size(), 0);
      row.angles = sequential_angles(start, counting_vs);
    }
    rep.rows.push_back(std::move(row));
  }

  const std::size_t m = extra_vectors.empty() ? 0 : extra_vectors.front().size();
  rep.sup_vector_masses.assign(m, 0.0);
  rep.sup_vector_tail_masses.assign(m, std::vector<double>(tail_windows.size(), 0.0));
  for (const TightnessRow& r : rep.rows) {
    rep.sup_trace = std::max(rep.sup_trace, r.trace);
    for (std::size_t t = 0; t < tail_windows.size(); ++t) {
      rep.sup_tail_traces[t] = std::max(rep.sup_tail_traces[t], r.tail_traces[t]);
    }
    if (r.margin) rep.inf_margin = rep.inf_margin ? std::min(*rep.inf_margin, *r.margin) : *r.margin;
    for (double ang : r.angles) rep.inf_angle = rep.inf_angle ? std::min(*rep.inf_angle, ang) : ang;
    for (std::size_t k = 0; k < std::min(m, r.vector_masses.size()); ++k) {
      rep.sup_vector_masses[k] = std::max(rep.sup_vector_masses[k], r.vector_masses[k]);
      for (std::size_t t = 0; t < tail_windows.size(); ++t) {
        rep.sup_vector_tail_masses[k][t] = std::max(rep.sup_vector_tail_masses[k][t], r.vector_tail_masses[k][t]);
      }
    }
  }

  TightnessVerdict& v = rep.verdict;
  v.bounded_trace = std::isfinite(rep.sup_trace) && rep.sup_trace <= options.trace_bound;
  // Some scripted tail must carry at most a small fraction of the mass,
  // uniformly over the family; with no tails scripted the family is finite
  // and trivially tight.
  const double scale = std::max(rep.sup_trace, 1e-300);
  v.vanishing_tail = tail_windows.empty();
  for (std::size_t t = 0; t < tail_windows.size(); ++t) {
    bool ok = rep.sup_tail_traces[t] <= options.tail_tolerance * scale;
    for (std::size_t k = 0; k < m; ++k) {
      ok = ok && rep.sup_vector_tail_masses[k][t] <= options.tail_tolerance * std::max(rep.sup_vector_masses[k], 1e-300);
    }
    v.vanishing_tail = v.vanishing_tail || ok;
  }
  v.uniform_margin = !rep.inf_margin || *rep.inf_margin > options.margin_floor;
  v.angle_bound = !rep.inf_angle || *rep.inf_angle >= options.min_angle;
  v.tight = v.bounded_trace && v.vanishing_tail && v.uniform_margin && v.angle_bound;
  return rep;
}

ChebyshevCheck chebyshev_mass_bound_check(const DppDistribution& d, const WeightFunction& f, double level,
                                          const std::vector<Configuration>& samples) {
  if (!(level > 0.0)) throw Error(ErrorKind::kDomain, "chebyshev check: level L must be positive");
  if (samples.empty()) throw Error(ErrorKind::kArgument, "chebyshev check: empty batch");
  require_space(d.space(), f.space(), "chebyshev check");
  const KernelOperator& k = d.kernel();
  const double trace =
      f.values().cwiseProduct(k.entries().diagonal()).cwiseProduct(k.space()->weight_vector()).sum();
  ChebyshevCheck out;
  out.bound = trace / level;
  std::size_t above = 0;
  for (const Configuration& x : samples) {
    double mass = 0.0;
    for (Index i : x.occupied()) mass += f(i);
    if (mass > level) ++above;
  }
  const double n = static_cast<double>(samples.size());
  out.empirical = static_cast<double>(above) / n;
  const double p = std::min(out.bound, 1.0);
  out.slack = 3.0 * std::sqrt(std::max(0.0, p * (1.0 - p)) / n);
  out.pass = out.empirical <= out.bound + out.slack;
  return out;
}

Matrix linear_statistics(const std::vector<Configuration>& batch, const WeightFunction& f,
                         const std::vector<Vector>& phis) {
  Matrix out(static_cast<Eigen::Index>(batch.size()), static_cast<Eigen::Index>(phis.size()));
  for (std::size_t r = 0; r < batch.size(); ++r) {
    require_space(batch[r].space(), f.space(), "linear_statistics");
    for (std::size_t j = 0; j < phis.size(); ++j) {
      if (phis[j].size() != static_cast<Eigen::Index>(f.size())) {
        throw Error(ErrorKind::kDimension, "linear_statistics: test function length mismatch");
      }
      double s = 0.0;
      for (Index i : batch[r].occupied()) s += phis[j](static_cast<Eigen::Index>(i)) * f(i);
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = s;
    }
  }
  return out;
}

void require_disjoint_supports(const std::vector<Vector>& phis, Index size) {
  if (phis.empty()) throw Error(ErrorKind::kArgument, "need at least one test function");
  for (Index i = 0; i < size; ++i) {
    int nonzero = 0;
    for (const Vector& p : phis) {
      if (p.size() != static_cast<Eigen::Index>(size)) throw Error(ErrorKind::kDimension, "test function length mismatch");
      if (p(static_cast<Eigen::Index>(i)) != 0.0) ++nonzero;
    }
    if (nonzero > 1) {
      throw Error(ErrorKind::kPrecondition, "test functions overlap at grid point " + std::to_string(i));
    }
  }
}

std::string WeakConvergenceReport::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17) << "n,energy_statistic,p_value\n";
  for (const WeakConvergenceRow& r : rows) os << r.n << ',' << r.statistic << ',' << r.p_value << '\n';
  return os.str();
}

WeakConvergenceReport weak_convergence_test(const std::vector<std::vector<Configuration>>& batches,
                                            const std::vector<Configuration>& limit, const WeightFunction& f,
                                            const std::vector<Vector>& phis, std::size_t permutations,
                                            std::uint64_t seed, std::vector<long> labels, unsigned jobs) {
  if (batches.empty()) throw Error(ErrorKind::kArgument, "weak_convergence_test: no batches");
  if (limit.empty()) throw Error(ErrorKind::kArgument, "weak_convergence_test: empty limit batch");
  if (!labels.empty() && labels.size() != batches.size()) {
    throw Error(ErrorKind::kArgument, "weak_convergence_test: one label per batch required");
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < batches.size(); ++i) labels.push_back(static_cast<long>(i + 1));
  }
  for (const auto& b : batches) {
    if (b.size() != limit.size()) throw Error(ErrorKind::kPrecondition, "weak_convergence_test: batch sizes differ");
  }
  require_disjoint_supports(phis, f.size());
  const Matrix limit_stats = linear_statistics(limit, f, phis);
  WeakConvergenceReport rep;
  rep.rows.resize(batches.size());
  parallel_for(batches.size(), jobs, [&](std::size_t i) {
    const PermutationResult r =
        energy_permutation_test(linear_statistics(batches[i], f, phis), limit_stats, permutations, seed + i);
    rep.rows[i] = {labels[i], r.statistic, r.p_value};
  });
  rep.statistic_decreasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    rep.statistic_decreasing = rep.statistic_decreasing && rep.rows[i].statistic < rep.rows[i - 1].statistic;
  }
  rep.final_p_above = rep.rows.back().p_value > kWeakConvergencePThreshold;
  return rep;
}

CalibrationResult weak_convergence_calibration(const DppDistribution& d, const WeightFunction& f,
                                               const std::vector<Vector>& phis, std::size_t batch_size,
                                               std::size_t repetitions, std::size_t permutations,
                                               std::uint64_t seed, unsigned jobs) {
  if (batch_size == 0 || repetitions == 0) throw Error(ErrorKind::kArgument, "calibration: empty design");
  require_disjoint_supports(phis, f.size());
  CalibrationResult out;
  out.p_values.assign(repetitions, 0.0);
  parallel_for(repetitions, jobs, [&](std::size_t r) {
    // three independent keys per repetition: batch a, batch b, permutations
    CounterRng keys(seed, r);
    const std::uint64_t sa = keys(), sb = keys(), sp = keys();
    const Matrix a = linear_statistics(sample(d, sa, batch_size), f, phis);
    const Matrix b = linear_statistics(sample(d, sb, batch_size), f, phis);
    out.p_values[r] = energy_permutation_test(a, b, permutations, sp).p_value;
  });
  out.ks_distance = kolmogorov_distance_to_uniform(out.p_values);
  return out;
}

}  // namespace dpplab
