#include "dpplab/dpp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dpplab/errors.hpp"
#include "dpplab/parallel.hpp"
#include "dpplab/rng.hpp"

namespace dpplab {

Configuration::Configuration(GroundSpacePtr space, std::vector<Index> occupied)
    : space_(std::move(space)), occupied_(std::move(occupied)) {
  std::sort(occupied_.begin(), occupied_.end());
  if (std::adjacent_find(occupied_.begin(), occupied_.end()) != occupied_.end()) {
    throw Error(ErrorKind::kDomain, "configuration repeats a point; only simple configurations are allowed");
  }
  if (!occupied_.empty() && occupied_.back() >= space_->size()) {
    throw Error(ErrorKind::kDimension, "configuration index out of bounds");
  }
}

Configuration Configuration::from_mask(GroundSpacePtr space, std::uint64_t mask) {
  std::vector<Index> occ;
  for (Index i = 0; i < 64 && (mask >> i) != 0; ++i) {
    if ((mask >> i) & 1U) occ.push_back(i);
  }
  return Configuration(std::move(space), std::move(occ));
}

bool Configuration::contains(Index i) const { return std::binary_search(occupied_.begin(), occupied_.end(), i); }

Index Configuration::count_in(const Window& w) const {
  Index c = 0;
  for (Index i : occupied_) c += w.contains(i) ? 1 : 0;
  return c;
}

std::uint64_t Configuration::mask() const {
  if (space_->size() > 64) throw Error(ErrorKind::kSize, "bitmask needs at most 64 points");
  std::uint64_t m = 0;
  for (Index i : occupied_) m |= std::uint64_t{1} << i;
  return m;
}

DppDistribution::DppDistribution(KernelOperator kernel) : kernel_(std::move(kernel)) {
  counting_ = kernel_.counting();
  Eigen::SelfAdjointEigenSolver<Matrix> es(counting_);
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    double& l = eigenvalues_(i);
    if (l < -kSpectrumClampBand || l > 1.0 + kSpectrumClampBand) {
      std::ostringstream os;
      os << "kernel is not a positive contraction: eigenvalue " << l << " outside [0, 1]";
      throw Error(ErrorKind::kContract, os.str());
    }
    l = std::clamp(l, 0.0, 1.0);
  }
}

double ConfigurationLaw::total() const {
  double s = 0.0;
  for (double p : probability) s += p;
  return s;
}

double correlation(const DppDistribution& d, const std::vector<Index>& a) {
  if (a.empty()) return 1.0;
  const auto k = static_cast<Eigen::Index>(a.size());
  Matrix m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      m(i, j) = d.counting()(static_cast<Eigen::Index>(a[static_cast<std::size_t>(i)]),
                             static_cast<Eigen::Index>(a[static_cast<std::size_t>(j)]));
    }
  }
  return m.determinant();
}

ConfigurationLaw brute_force_distribution(const DppDistribution& d) {
  const Index n = d.space()->size();
  if (n > kMaxBruteForcePoints) {
    std::ostringstream os;
    os << "brute-force enumeration needs at most " << kMaxBruteForcePoints << " points, got " << n;
    throw Error(ErrorKind::kSize, os.str());
  }
  const auto ni = static_cast<Eigen::Index>(n);
  const Matrix& kc = d.counting();
  const Matrix complement = Matrix::Identity(ni, ni) - kc;
  ConfigurationLaw law{d.space(), std::vector<double>(std::size_t{1} << n, 0.0)};
  Matrix m(ni, ni);
  for (std::uint64_t mask = 0; mask < law.probability.size(); ++mask) {
    for (Eigen::Index i = 0; i < ni; ++i) {
      m.row(i) = ((mask >> i) & 1U) ? kc.row(i) : complement.row(i);
    }
    law.probability[mask] = ni == 0 ? 1.0 : Eigen::PartialPivLU<Matrix>(m).determinant();
  }
  return law;
}

namespace {

Configuration sample_one(const DppDistribution& d, CounterRng& rng) {
  const Vector& lambda = d.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    if (rng.uniform() < lambda(j)) keep.push_back(j);
  }
  const Eigen::Index n = d.eigenvectors().rows();
  Matrix v(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) v.col(static_cast<Eigen::Index>(k)) = d.eigenvectors().col(keep[k]);

  std::vector<Index> points;
  while (v.cols() > 0) {
    const Vector p = v.rowwise().squaredNorm();
    const double total = p.sum();
    const double u = rng.uniform() * total;
    Eigen::Index x = 0;
    double acc = 0.0;
    for (; x < n - 1; ++x) {
      acc += p(x);
      if (u < acc) break;
    }
    while (p(x) == 0.0 && x > 0) --x;
    points.push_back(static_cast<Index>(x));
    if (v.cols() == 1) break;

    Eigen::Index pivot = 0;
    v.row(x).cwiseAbs().maxCoeff(&pivot);
    const Vector pivot_col = v.col(pivot);
    const double pivot_val = v(x, pivot);
    Matrix next(n, v.cols() - 1);
    for (Eigen::Index j = 0, c = 0; j < v.cols(); ++j) {
      if (j == pivot) continue;
      next.col(c++) = v.col(j) - pivot_col * (v(x, j) / pivot_val);
    }
    next.row(x).setZero();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < next.cols(); ++j) {
        for (Eigen::Index i = 0; i < j; ++i) next.col(j) -= next.col(i).dot(next.col(j)) * next.col(i);
        next.col(j).normalize();
      }
    }
    v = std::move(next);
  }
  return Configuration(d.space(), std::move(points));
}

}  // namespace

std::vector<Configuration> sample(const DppDistribution& d, std::uint64_t seed, std::size_t count, unsigned jobs) {
  std::vector<Configuration> out(count, Configuration(d.space(), {}));
  parallel_for(count, jobs, [&](std::size_t r) {
    CounterRng rng(seed, r);
    out[r] = sample_one(d, rng);
  });
  return out;
}

FiniteMeasure intensity(const DppDistribution& d) {
  return FiniteMeasure(d.space(), d.kernel().entries().diagonal().cwiseProduct(d.space()->weight_vector()).cwiseMax(0.0));
}

double total_variation(const ConfigurationLaw& p, const ConfigurationLaw& q) {
  const std::size_t n = std::max(p.probability.size(), q.probability.size());
  double s = 0.0;
  for (std::size_t m = 0; m < n; ++m) s += std::abs(p(m) - q(m));
  return 0.5 * s;
}

ConfigurationLaw empirical_law(const std::vector<Configuration>& batch, const GroundSpacePtr& space) {
  if (space->size() > kMaxBruteForcePoints) throw Error(ErrorKind::kSize, "empirical law needs at most 20 points");
  ConfigurationLaw law{space, std::vector<double>(std::size_t{1} << space->size(), 0.0)};
  if (batch.empty()) return law;
  const double inc = 1.0 / static_cast<double>(batch.size());
  for (const Configuration& c : batch) law.probability[c.mask()] += inc;
  return law;
}

std::string samples_to_csv(const std::vector<Configuration>& batch) {
  std::ostringstream os;
  for (const Configuration& c : batch) {
    for (std::size_t k = 0; k < c.occupied().size(); ++k) os << (k ? " " : "") << c.occupied()[k];
    os << '\n';
  }
  return os.str();
}

std::vector<Configuration> samples_from_csv(const std::string& text, const GroundSpacePtr& space) {
  std::vector<Configuration> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::istringstream line(text.substr(start, end - start));
    std::vector<Index> occ;
    std::string tok;
    while (line >> tok) {
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        occ.push_back(static_cast<Index>(v));
      } catch (const std::exception&) {
        throw Error(ErrorKind::kConfig, "sample CSV: bad index '" + tok + "'");
      }
    }
    out.emplace_back(space, std::move(occ));
    start = end + 1;
  }
  return out;
}

}  // namespace dpplab
