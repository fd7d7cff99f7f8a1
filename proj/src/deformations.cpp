#include "dpplab/deformations.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "dpplab/conditioning.hpp"
#include "dpplab/errors.hpp"
#include "dpplab/operator_core.hpp"
#include "dpplab/parallel.hpp"
#include "dpplab/special_functions.hpp"

namespace dpplab {
namespace {

struct Extension {
  Matrix added;  // counting-form columns v~_k
  std::vector<double> angles;
};

// Sequentially orthogonalizes counting-form vectors against `base` and the
// previously accepted ones.
Extension extend_counting(const Matrix& base, const std::vector<Vector>& vs_counting, double min_angle) {
  Extension out;
  const Eigen::Index n = base.rows();
  out.added.resize(n, 0);
  Matrix current = base;
  for (std::size_t k = 0; k < vs_counting.size(); ++k) {
    const Vector& v = vs_counting[k];
    const double nv = v.norm();
    if (!(nv > 0.0)) {
      std::ostringstream os;
      os << "extra vector " << k << " is zero";
      throw Error(ErrorKind::kDomain, os.str());
    }
    Vector r = v;
    if (current.cols() > 0) {
      r -= current * (current.transpose() * r);
      r -= current * (current.transpose() * r);
    }
    const double a = std::asin(std::clamp(r.norm() / nv, 0.0, 1.0));
    out.angles.push_back(a);
    if (a < min_angle) {
      std::ostringstream os;
      os << "extra vector " << k << " makes angle " << a << " < " << min_angle << " with the preceding span";
      throw AngleDegeneracyError(k, a, min_angle, os.str());
    }
    r.normalize();
    current.conservativeResize(Eigen::NoChange, current.cols() + 1);
    current.col(current.cols() - 1) = r;
    out.added.conservativeResize(Eigen::NoChange, out.added.cols() + 1);
    out.added.col(out.added.cols() - 1) = r;
  }
  return out;
}

std::vector<Vector> to_counting(const std::vector<Vector>& vs, const GroundSpace& space) {
  const Vector sw = space.sqrt_weight_vector();
  std::vector<Vector> out;
  out.reserve(vs.size());
  for (const Vector& v : vs) {
    if (v.size() != sw.size()) throw Error(ErrorKind::kDimension, "vector length differs from the ground space");
    out.emplace_back(sw.cwiseProduct(v));
  }
  return out;
}

std::vector<Vector> scaled(const std::vector<Vector>& vs, const Vector& factor) {
  std::vector<Vector> out;
  out.reserve(vs.size());
  for (const Vector& v : vs) out.emplace_back(factor.cwiseProduct(v));
  return out;
}

double smallest_principal_angle(const Matrix& qa, const Matrix& qb) {
  if (qa.cols() == 0 || qb.cols() == 0) return 0.5 * 3.14159265358979323846;
  Eigen::JacobiSVD<Matrix> svd(qa.transpose() * qb);
  return std::acos(std::clamp(svd.singularValues()(0), 0.0, 1.0));
}

}  // namespace

DeformationModel::DeformationModel(GroundSpacePtr space, std::vector<Vector> l_basis, std::vector<Vector> extra,
                                   Window core, double min_angle)
    : space_(std::move(space)),
      l_basis_(std::move(l_basis)),
      extra_(std::move(extra)),
      core_(std::move(core)),
      min_angle_(min_angle) {
  if (!(min_angle_ > 0.0)) throw Error(ErrorKind::kDomain, "min_angle must be positive");
  core_.validate(*space_);
  const Matrix q = l_basis_.empty() ? Matrix(static_cast<Eigen::Index>(space_->size()), 0)
                                    : orthonormal_counting_basis(l_basis_, *space_);
  extend_counting(q, to_counting(extra_, *space_), min_angle_);
}

KernelOperator DeformationModel::unperturbed() const {
  if (l_basis_.empty()) return KernelOperator::zero(space_);
  return project_span(l_basis_, space_);
}

KernelOperator extend_projection(const KernelOperator& p, const std::vector<Vector>& vs, double min_angle) {
  if (!is_projection(p)) throw Error(ErrorKind::kContract, "extend_projection: operator is not a projection");
  const Extension ext = extend_counting(range_basis(p), to_counting(vs, *p.space()), min_angle);
  return KernelOperator::from_counting(p.space(), p.counting() + ext.added * ext.added.transpose());
}

ConvergenceReport perturbation_convergence_suite(const std::vector<KernelOperator>& pn,
                                                 const std::vector<std::vector<Vector>>& vn,
                                                 const KernelOperator& p, const std::vector<Vector>& v,
                                                 const std::vector<Window>& windows, double min_angle,
                                                 std::vector<long> labels) {
  if (pn.size() != vn.size()) throw Error(ErrorKind::kArgument, "perturbation suite: P_n and v_n differ in length");
  if (labels.empty()) {
    for (std::size_t i = 0; i < pn.size(); ++i) labels.push_back(static_cast<long>(i + 1));
  }
  std::vector<KernelOperator> members;
  members.reserve(pn.size());
  for (std::size_t i = 0; i < pn.size(); ++i) {
    if (vn[i].size() != v.size()) throw Error(ErrorKind::kArgument, "perturbation suite: rank mismatch");
    try {
      members.push_back(extend_projection(pn[i], vn[i], min_angle));
    } catch (const AngleDegeneracyError& e) {
      std::ostringstream os;
      os << "member n = " << labels[i] << ": " << e.what();
      throw AngleDegeneracyError(e.index(), e.angle(), e.min_angle(), os.str());
    }
  }
  const KernelOperator limit = extend_projection(p, v, min_angle);
  return convergence_report(members, limit, windows, std::move(labels));
}

SqrtgDecomposition sqrtg_decomposition(const DeformationModel& model, const WeightFunction& g) {
  const GroundSpacePtr& space = model.space();
  if (g.size() != space->size()) throw Error(ErrorKind::kDimension, "weight function differs in size from the model");
  const Vector sg = g.values().cwiseSqrt();
  const KernelOperator q = model.unperturbed();
  const KernelOperator induced = model.l_basis().empty() ? KernelOperator::zero(space) : induced_kernel(g, q);

  const Matrix q_weighted = model.l_basis().empty()
                                ? Matrix(static_cast<Eigen::Index>(space->size()), 0)
                                : orthonormal_counting_basis(scaled(model.l_basis(), sg), *space);
  const Extension ext = extend_counting(q_weighted, to_counting(scaled(model.extra(), sg), *space), model.min_angle());
  const KernelOperator complement = KernelOperator::from_counting_factor(space, ext.added);
  const KernelOperator total = induced + complement;

  std::vector<Vector> all = scaled(model.l_basis(), sg);
  for (const Vector& v : scaled(model.extra(), sg)) all.push_back(v);
  double err = 0.0;
  if (!all.empty()) err = (total.entries() - project_span(all, space).entries()).cwiseAbs().maxCoeff();
  return {total, induced, complement, ext.angles, err};
}

KernelOperator sqrtg_subspace_projection(const DeformationModel& model, const WeightFunction& g) {
  SqrtgDecomposition d = sqrtg_decomposition(model, g);
  if (d.verification_error > 1e-8) {
    std::ostringstream os;
    os << "Pi^g decomposition disagrees with the direct projection by " << d.verification_error;
    throw Error(ErrorKind::kContract, os.str());
  }
  return std::move(d.total);
}

Vector evaluate_function_tag(const std::string& tag, const GroundSpace& space) {
  const auto colon = tag.find(':');
  const std::string kind = tag.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string{} : tag.substr(colon + 1);
  auto parse = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::kConfig, "bad number '" + s + "' in function tag '" + tag + "'");
    }
  };
  if (kind == "power") {
    const double p = parse(arg);
    return space.sample([p](double x) { return std::pow(x, p); });
  }
  if (kind == "constant") {
    const double c = parse(arg);
    return space.sample([c](double) { return c; });
  }
  if (kind == "indicator") {
    if (arg.size() < 5 || arg.front() != '[' || arg.back() != ']') {
      throw Error(ErrorKind::kConfig, "indicator tag must look like indicator:[a,b]");
    }
    const std::string body = arg.substr(1, arg.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::kConfig, "indicator tag must look like indicator:[a,b]");
    const double a = parse(body.substr(0, comma));
    const double b = parse(body.substr(comma + 1));
    return space.sample([a, b](double x) { return (x >= a && x <= b) ? 1.0 : 0.0; });
  }
  if (kind == "bessel") {
    const auto second = arg.find(':');
    if (second == std::string::npos) throw Error(ErrorKind::kConfig, "bessel tag must look like bessel:s:c");
    const double s = parse(arg.substr(0, second));
    const double c = parse(arg.substr(second + 1));
    return space.sample([s, c](double x) { return bessel_j(s, c * std::sqrt(std::max(0.0, x))); });
  }
  throw Error(ErrorKind::kConfig, "unknown function tag '" + tag + "'");
}

ConvergenceReport ExhaustionReport::distance_report() const {
  std::vector<long> ns;
  for (const ExhaustionRow& r : rows) ns.push_back(r.n);
  ConvergenceReport rep(ns, probe_ids);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t w = 0; w < probe_ids.size(); ++w) rep.set(i, w, rows[i].distances[w]);
  }
  return rep;
}

bool ExhaustionReport::decreasing_once_angles_hold() const {
  std::size_t first = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].angle_ok) {
      first = i;
      break;
    }
  }
  if (first == rows.size()) return false;
  for (std::size_t i = first + 1; i < rows.size(); ++i) {
    if (!rows[i].angle_ok) return false;
    for (std::size_t w = 0; w < probe_ids.size(); ++w) {
      if (rows[i].distances[w] > rows[i - 1].distances[w]) return false;
    }
  }
  return true;
}

std::string ExhaustionReport::to_csv() const {
  std::ostringstream os;
  os << "n,grid_points,b_lower,angle,angle_ok,v_norm,probe_norm,q_outside_trace,window_id,distance\n"
     << std::setprecision(17);
  for (const ExhaustionRow& r : rows) {
    for (std::size_t w = 0; w < probe_ids.size(); ++w) {
      os << r.n << ',' << r.grid_points << ',' << r.b_lower << ',' << r.angle << ',' << (r.angle_ok ? 1 : 0) << ','
         << r.v_norm << ',' << r.probe_norm << ',' << r.q_outside_trace << ',' << csv_field(probe_ids[w]) << ','
         << r.distances[w] << '\n';
    }
  }
  return os.str();
}

namespace {

ExhaustionRow exhaustion_row(const DeformationModel& model, const Matrix& q_full, const Window& kept,
                             const std::vector<Window>& probes, const Vector& probe) {
  const GroundSpace& space = *model.space();
  const Vector chi = kept.indicator(space);
  ExhaustionRow row;
  row.grid_points = space.size();

  const Matrix& q = q_full;
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    if (chi(i) == 0.0) row.q_outside_trace += q.row(i).squaredNorm();
  }

  const std::vector<Vector> chi_l = scaled(model.l_basis(), chi);
  const std::vector<Vector> chi_v = scaled(model.extra(), chi);
  for (const Vector& v : chi_v) row.v_norm = std::max(row.v_norm, weighted_norm(v, space));

  Matrix q_chi_l;
  try {
    q_chi_l = chi_l.empty() ? Matrix(q.rows(), 0) : orthonormal_counting_basis(chi_l, space);
  } catch (const DegenerateBasisError& e) {
    throw InducibilityError(0.0, std::string("L restricted to E0 u B is degenerate: ") + e.what());
  }
  std::vector<double> nan_distances(probes.size(), std::nan(""));
  Matrix q_chi_v;
  try {
    q_chi_v = chi_v.empty() ? Matrix(q.rows(), 0) : orthonormal_counting_basis(chi_v, space);
  } catch (const DegenerateBasisError&) {
    row.angle = 0.0;
    row.angle_ok = false;
    row.distances = nan_distances;
    row.probe_norm = std::nan("");
    return row;
  }
  row.angle = smallest_principal_angle(q_chi_l, q_chi_v);
  row.angle_ok = chi_v.empty() || row.angle >= model.min_angle();

  Extension ext;
  try {
    // The per-vector check uses a vanishing threshold; the uniform bound is
    // reported through angle_ok instead of aborting the suite.
    ext = extend_counting(q_chi_l, to_counting(chi_v, space), 0.0);
  } catch (const AngleDegeneracyError&) {
    row.distances = nan_distances;
    row.probe_norm = std::nan("");
    row.angle_ok = false;
    return row;
  }
  Matrix factor(q.rows(), q_chi_l.cols() + ext.added.cols());
  factor << q_chi_l, ext.added;
  for (const Window& w : probes) row.distances.push_back(low_rank_local_trace_distance(factor, q, w));
  const Vector probe_c = space.sqrt_weight_vector().cwiseProduct(probe);
  row.probe_norm = ext.added.cols() == 0 ? 0.0 : (ext.added.transpose() * probe_c).norm();
  return row;
}

}  // namespace

ExhaustionReport exhaustion_suite(const DeformationModel& model, const std::vector<Window>& b_n,
                                  const std::vector<Window>& probe_windows, const Vector& probe) {
  if (b_n.empty()) throw Error(ErrorKind::kArgument, "exhaustion suite: empty window schedule");
  const GroundSpace& space = *model.space();
  if (probe.size() != static_cast<Eigen::Index>(space.size())) {
    throw Error(ErrorKind::kDimension, "probe vector length differs from the ground space");
  }
  for (std::size_t i = 0; i < b_n.size(); ++i) {
    b_n[i].validate(space);
    if (i > 0 && !b_n[i - 1].is_subset_of(b_n[i])) {
      throw Error(ErrorKind::kPrecondition, "exhaustion suite: windows B_n must increase");
    }
  }
  for (const Window& w : probe_windows) w.validate(space);
  const Matrix q_full = model.l_basis().empty() ? Matrix(static_cast<Eigen::Index>(space.size()), 0)
                                                : orthonormal_counting_basis(model.l_basis(), space);
  ExhaustionReport out;
  for (std::size_t w = 0; w < probe_windows.size(); ++w) {
    out.probe_ids.push_back(probe_windows[w].description().empty() ? "W" + std::to_string(w)
                                                                    : probe_windows[w].description());
  }
  for (std::size_t i = 0; i < b_n.size(); ++i) {
    const Window kept = model.core().united(b_n[i]);
    ExhaustionRow row = exhaustion_row(model, q_full, kept, probe_windows, probe);
    row.n = static_cast<long>(i + 1);
    row.b_lower = b_n[i].empty() ? std::nan("") : space.point(b_n[i].indices().front());
    out.rows.push_back(std::move(row));
  }
  return out;
}

ExhaustionReport run_exhaustion_script(const ExhaustionScript& script, unsigned jobs) {
  if (script.levels.empty()) throw Error(ErrorKind::kArgument, "exhaustion script: no levels");
  if (!script.b_lower.empty() && script.b_lower.size() != script.levels.size()) {
    throw Error(ErrorKind::kArgument, "exhaustion script: b_lower must match levels");
  }
  ExhaustionReport out;
  for (const auto& [a, b] : script.probe_windows) {
    std::ostringstream os;
    os << "[" << a << ";" << b << "]";
    out.probe_ids.push_back(os.str());
  }
  out.rows.resize(script.levels.size());
  parallel_for(script.levels.size(), jobs, [&](std::size_t i) {
    const std::size_t k = script.levels[i];
    const Index points = Index{1} << k;
    const GroundSpacePtr grid = GroundSpace::graded(1.0, points, script.grid_power, "graded-2^" + std::to_string(k));
    std::vector<Vector> l, v;
    for (const std::string& t : script.l_basis) l.push_back(evaluate_function_tag(t, *grid));
    for (const std::string& t : script.v_basis) v.push_back(evaluate_function_tag(t, *grid));
    const Window core = Window::interval(*grid, script.core_lo, script.core_hi, "E0");
    const DeformationModel model(grid, l, v, core, script.min_angle);
    const double lower = script.b_lower.empty() ? std::ldexp(1.0, -4 * static_cast<int>(k)) : script.b_lower[i];
    std::vector<Index> b_idx;
    for (Index j = 0; j < grid->size(); ++j) {
      if (grid->point(j) >= lower && grid->point(j) < script.core_lo) b_idx.push_back(j);
    }
    const Window bn(std::move(b_idx), "B");
    std::vector<Window> probes;
    for (std::size_t w = 0; w < script.probe_windows.size(); ++w) {
      probes.push_back(Window::interval(*grid, script.probe_windows[w].first, script.probe_windows[w].second,
                                        out.probe_ids[w]));
    }
    const Vector phi = evaluate_function_tag(script.probe, *grid);
    const Matrix q_full = l.empty() ? Matrix(static_cast<Eigen::Index>(grid->size()), 0)
                                    : orthonormal_counting_basis(l, *grid);
    ExhaustionRow row = exhaustion_row(model, q_full, core.united(bn), probes, phi);
    row.n = static_cast<long>(k);
    row.b_lower = lower;
    out.rows[i] = std::move(row);
  });
  return out;
}

}  // namespace dpplab
