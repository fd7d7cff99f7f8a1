#include "dpplab/conditioning.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "dpplab/errors.hpp"
#include "dpplab/operator_core.hpp"
#include "dpplab/parallel.hpp"
#include "dpplab/rng.hpp"

namespace dpplab {
namespace {

void require_conditioning(const WeightFunction& g, const KernelOperator& p) {
  if (g.role() != WeightRole::kConditioning) {
    throw Error(ErrorKind::kPrecondition, "conditioning needs a weight function with role g");
  }
  if (g.size() != p.size()) throw Error(ErrorKind::kDimension, "weight function and kernel differ in size");
}

double spectral_norm_tall(const Matrix& m) {
  if (m.cols() == 0 || m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.transpose() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Matrix shifted_operator(const WeightFunction& g, const KernelOperator& p) {
  const Matrix pc = p.counting();
  const auto n = pc.rows();
  return Matrix::Identity(n, n) + (g.values().array() - 1.0).matrix().asDiagonal() * pc;
}

}  // namespace

double psi_g(const WeightFunction& g, const Configuration& x) {
  if (g.role() != WeightRole::kConditioning) {
    throw Error(ErrorKind::kPrecondition, "psi_g needs a weight function with role g");
  }
  double prod = 1.0;
  for (Index i : x.occupied()) prod *= g(i);
  return prod;
}

Inducibility check_inducibility(const WeightFunction& g, const KernelOperator& p) {
  require_conditioning(g, p);
  if (!is_projection(p)) throw Error(ErrorKind::kContract, "check_inducibility: operator is not a projection");
  const Matrix u = range_basis(p);
  const Vector one_minus_g = (1.0 - g.values().array()).matrix();
  Inducibility out;
  out.norm_1mg_p = spectral_norm_tall(one_minus_g.asDiagonal() * u);
  out.margin = 1.0 - spectral_norm_tall(one_minus_g.cwiseSqrt().asDiagonal() * u);
  out.invertible = out.margin > kInducibilityMargin;
  return out;
}

KernelOperator induced_kernel(const WeightFunction& g, const KernelOperator& p) {
  const Inducibility ind = check_inducibility(g, p);
  if (!ind.invertible) {
    std::ostringstream os;
    os << "1 + (g - 1)P is not invertible: margin " << ind.margin;
    throw InducibilityError(ind.margin, os.str());
  }
  const GroundSpacePtr& space = p.space();
  const Vector sg = g.values().cwiseSqrt();
  if (g.values().minCoeff() == 0.0) {
    const Matrix u = range_basis(p);
    if (u.cols() == 0) return KernelOperator::zero(space);
    const Vector inv_sw = space->sqrt_weight_vector().cwiseInverse();
    std::vector<Vector> basis;
    for (Eigen::Index k = 0; k < u.cols(); ++k) basis.emplace_back(sg.cwiseProduct(inv_sw.cwiseProduct(u.col(k))));
    return project_span(basis, space);
  }
  const Matrix pc = p.counting();
  const Eigen::PartialPivLU<Matrix> lu(shifted_operator(g, p));
  const Matrix solved = lu.solve(Matrix(sg.asDiagonal()));
  const Matrix b = sg.asDiagonal() * pc * solved;
  return KernelOperator::from_counting(space, 0.5 * (b + b.transpose()));
}

double normalization_constant(const WeightFunction& g, const KernelOperator& p) {
  require_conditioning(g, p);
  if (p.size() == 0) return 1.0;
  return Eigen::PartialPivLU<Matrix>(shifted_operator(g, p)).determinant();
}

double resolvent_norm(const WeightFunction& g, const KernelOperator& p) {
  require_conditioning(g, p);
  const Matrix a = shifted_operator(g, p);
  Eigen::JacobiSVD<Matrix> svd(a);
  const double smin = svd.singularValues().minCoeff();
  if (!(smin > 0.0)) throw InducibilityError(0.0, "1 + (g - 1)P is singular");
  return 1.0 / smin;
}

DppDistribution induced_distribution(const WeightFunction& g, const KernelOperator& p) {
  const double z = normalization_constant(g, p);
  if (!(z > kMinNormalization)) {
    std::ostringstream os;
    os << "Psi_g has vanishing expectation (" << z << "); the induced process does not exist";
    throw Error(ErrorKind::kConditioningImpossible, os.str());
  }
  return DppDistribution(induced_kernel(g, p));
}

ConfigurationLaw reweight_law(const ConfigurationLaw& law, const WeightFunction& g) {
  ConfigurationLaw out{law.space, std::vector<double>(law.probability.size(), 0.0)};
  double z = 0.0;
  for (std::uint64_t mask = 0; mask < law.probability.size(); ++mask) {
    double psi = 1.0;
    for (Index i = 0; (mask >> i) != 0; ++i) {
      if ((mask >> i) & 1U) psi *= g(i);
    }
    out.probability[mask] = psi * law.probability[mask];
    z += out.probability[mask];
  }
  if (!(z > kMinNormalization)) {
    throw Error(ErrorKind::kConditioningImpossible, "reweighted law has vanishing total mass");
  }
  for (double& q : out.probability) q /= z;
  return out;
}

OracleBatteryResult run_oracle_battery(const OracleBatteryOptions& opt, unsigned jobs) {
  const auto start = std::chrono::steady_clock::now();
  struct Trial {
    double tv = 0.0;
    double norm_err = 0.0;
    double proj_err = 0.0;
  };
  std::vector<Trial> trials(opt.trials);
  parallel_for(opt.trials, jobs, [&](std::size_t t) {
    CounterRng rng(opt.seed, t);
    const Index n = 1 + static_cast<Index>(rng.below(opt.max_points));
    const Index rank = 1 + static_cast<Index>(rng.below(std::min(opt.max_rank, n)));
    std::vector<double> pts(n), wts(n);
    for (Index i = 0; i < n; ++i) {
      pts[i] = static_cast<double>(i + 1);
      wts[i] = 0.5 + 1.5 * rng.uniform();
    }
    const auto space = std::make_shared<const GroundSpace>(std::move(pts), std::move(wts), "oracle-trial");
    std::vector<Vector> basis;
    for (Index k = 0; k < rank; ++k) {
      Vector v(static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = standard_normal(rng);
      basis.push_back(std::move(v));
    }
    const KernelOperator p = project_span(basis, space);
    Vector gv(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < gv.size(); ++i) gv(i) = 1.0 - (1.0 - opt.g_floor) * rng.uniform();
    const WeightFunction g(space, gv, WeightRole::kConditioning);

    const ConfigurationLaw base = brute_force_distribution(DppDistribution(p));
    const ConfigurationLaw reweighted = reweight_law(base, g);
    const DppDistribution induced = induced_distribution(g, p);
    trials[t].tv = total_variation(reweighted, brute_force_distribution(induced));

    double expect_psi = 0.0;
    for (std::uint64_t mask = 0; mask < base.probability.size(); ++mask) {
      expect_psi += psi_g(g, Configuration::from_mask(space, mask)) * base.probability[mask];
    }
    trials[t].norm_err = std::abs(normalization_constant(g, p) - expect_psi);

    std::vector<Vector> weighted;
    for (const Vector& b : basis) weighted.emplace_back(gv.cwiseSqrt().cwiseProduct(b));
    const KernelOperator direct = project_span(weighted, space);
    trials[t].proj_err = (induced.kernel().entries() - direct.entries()).cwiseAbs().maxCoeff();
  });

  OracleBatteryResult r;
  r.trials = opt.trials;
  for (const Trial& t : trials) {
    r.tv_pass += t.tv < 1e-9 ? 1 : 0;
    r.normalization_pass += t.norm_err < 1e-10 ? 1 : 0;
    r.projection_pass += t.proj_err < 1e-9 ? 1 : 0;
    r.max_tv = std::max(r.max_tv, t.tv);
    r.max_normalization_error = std::max(r.max_normalization_error, t.norm_err);
    r.max_projection_error = std::max(r.max_projection_error, t.proj_err);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace dpplab
