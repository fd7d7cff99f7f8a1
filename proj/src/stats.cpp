#include "dpplab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "dpplab/errors.hpp"
#include "dpplab/rng.hpp"

namespace dpplab {

ChiSquareResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& probabilities,
                               double min_expected) {
  if (observed.size() != probabilities.size()) {
    throw Error(ErrorKind::kDimension, "chi-square: observed and expected differ in length");
  }
  const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
  std::vector<double> obs_cells, exp_cells;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = std::max(0.0, probabilities[i]) * total;
    if (e >= min_expected) {
      obs_cells.push_back(observed[i]);
      exp_cells.push_back(e);
    } else {
      pooled_obs += observed[i];
      pooled_exp += e;
    }
  }
  if (pooled_exp >= min_expected || exp_cells.empty()) {
    obs_cells.push_back(pooled_obs);
    exp_cells.push_back(pooled_exp);
  } else if (pooled_exp > 0.0 || pooled_obs > 0.0) {
    const auto smallest = std::min_element(exp_cells.begin(), exp_cells.end()) - exp_cells.begin();
    obs_cells[static_cast<std::size_t>(smallest)] += pooled_obs;
    exp_cells[static_cast<std::size_t>(smallest)] += pooled_exp;
  }
  ChiSquareResult r;
  for (std::size_t i = 0; i < obs_cells.size(); ++i) {
    if (exp_cells[i] > 0.0) {
      const double d = obs_cells[i] - exp_cells[i];
      r.statistic += d * d / exp_cells[i];
    } else if (obs_cells[i] > 0.0) {
      r.statistic = std::numeric_limits<double>::infinity();
    }
  }
  r.degrees_of_freedom = static_cast<int>(obs_cells.size()) - 1;
  if (r.degrees_of_freedom <= 0) {
    r.p_value = 1.0;
  } else if (std::isinf(r.statistic)) {
    r.p_value = 0.0;
  } else {
    r.p_value = boost::math::gamma_q(0.5 * r.degrees_of_freedom, 0.5 * r.statistic);
  }
  return r;
}

namespace {

struct Atoms {
  Matrix distance;                   // K x K
  std::vector<std::size_t> labels;   // atom index per pooled observation (a rows, then b rows)
};

Atoms build_atoms(const Sample& a, const Sample& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::kDimension, "energy distance: samples differ in dimension");
  std::map<std::vector<double>, std::size_t> index;
  std::vector<Vector> points;
  Atoms out;
  auto add = [&](const Eigen::Ref<const Eigen::RowVectorXd>& row) {
    std::vector<double> key(static_cast<std::size_t>(row.size()));
    for (Eigen::Index j = 0; j < row.size(); ++j) key[static_cast<std::size_t>(j)] = row(j);
    auto [it, inserted] = index.emplace(std::move(key), points.size());
    if (inserted) points.emplace_back(row.transpose());
    out.labels.push_back(it->second);
  };
  for (Eigen::Index i = 0; i < a.rows(); ++i) add(a.row(i));
  for (Eigen::Index i = 0; i < b.rows(); ++i) add(b.row(i));
  const auto k = static_cast<Eigen::Index>(points.size());
  out.distance.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double d = (points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(j)]).norm();
      out.distance(i, j) = d;
      out.distance(j, i) = d;
    }
  }
  return out;
}

double atom_statistic(const Atoms& atoms, const std::vector<std::size_t>& labels, std::size_t na) {
  const auto k = atoms.distance.rows();
  Vector ca = Vector::Zero(k), cb = Vector::Zero(k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (i < na ? ca : cb)(static_cast<Eigen::Index>(labels[i])) += 1.0;
  }
  const double a = static_cast<double>(na);
  const double b = static_cast<double>(labels.size() - na);
  const Vector da = atoms.distance * ca;
  const Vector db = atoms.distance * cb;
  return 2.0 * cb.dot(da) / (a * b) - ca.dot(da) / (a * a) - cb.dot(db) / (b * b);
}

}  // namespace

double energy_distance(const Sample& a, const Sample& b) {
  if (a.rows() == 0 || b.rows() == 0) throw Error(ErrorKind::kArgument, "energy distance: empty sample");
  const Atoms atoms = build_atoms(a, b);
  return atom_statistic(atoms, atoms.labels, static_cast<std::size_t>(a.rows()));
}

PermutationResult energy_permutation_test(const Sample& a, const Sample& b, std::size_t permutations,
                                          std::uint64_t seed) {
  if (a.rows() == 0 || b.rows() == 0) throw Error(ErrorKind::kArgument, "energy test: empty sample");
  const Atoms atoms = build_atoms(a, b);
  const auto na = static_cast<std::size_t>(a.rows());
  PermutationResult r;
  r.statistic = atom_statistic(atoms, atoms.labels, na);
  const double tol = 1e-12 * std::max(1.0, std::abs(r.statistic));
  std::size_t greater = 0;
  std::size_t equal = 0;
  std::vector<std::size_t> labels = atoms.labels;
  for (std::size_t rep = 0; rep < permutations; ++rep) {
    CounterRng rng(seed, rep);
    for (std::size_t i = labels.size() - 1; i > 0; --i) std::swap(labels[i], labels[rng.below(i + 1)]);
    const double t = atom_statistic(atoms, labels, na);
    if (t > r.statistic + tol) {
      ++greater;
    } else if (std::abs(t - r.statistic) <= tol) {
      ++equal;
    }
  }
  CounterRng tie(seed, permutations);
  const double u = tie.uniform();
  r.p_value = (static_cast<double>(greater) + u * static_cast<double>(equal + 1)) /
              static_cast<double>(permutations + 1);
  return r;
}

double kolmogorov_distance_to_uniform(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double p = values[i];
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - p, p - static_cast<double>(i) / n));
  }
  return d;
}

}  // namespace dpplab
