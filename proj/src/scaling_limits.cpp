#include "dpplab/scaling_limits.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "dpplab/errors.hpp"
#include "dpplab/operator_core.hpp"
#include "dpplab/parallel.hpp"
#include "dpplab/quadrature.hpp"
#include "dpplab/special_functions.hpp"

namespace dpplab {
namespace {

void require_order(double s) {
  if (!(s > -1.0)) throw Error(ErrorKind::kDomain, "kernel parameter s must exceed -1");
}

struct JacobiValues {
  std::vector<double> p;
  std::vector<double> dp;
};

// Orthonormal values (and optionally derivatives) of degrees 0..count-1.
JacobiValues jacobi_values(double s, std::size_t count, double u, bool derivatives,
                           const RecurrenceCoefficients& rc) {
  JacobiValues out;
  out.p.assign(count, 0.0);
  if (derivatives) out.dp.assign(count, 0.0);
  if (count == 0) return out;
  out.p[0] = 1.0 / std::sqrt(rc.b[0]);
  if (count == 1) return out;
  const double sb1 = std::sqrt(rc.b[1]);
  out.p[1] = (u - rc.a[0]) * out.p[0] / sb1;
  if (derivatives) out.dp[1] = out.p[0] / sb1;
  for (std::size_t k = 1; k + 1 < count; ++k) {
    const double sbk = std::sqrt(rc.b[k]);
    const double sbn = std::sqrt(rc.b[k + 1]);
    out.p[k + 1] = ((u - rc.a[k]) * out.p[k] - sbk * out.p[k - 1]) / sbn;
    if (derivatives) {
      out.dp[k + 1] = (out.p[k] + (u - rc.a[k]) * out.dp[k] - sbk * out.dp[k - 1]) / sbn;
    }
  }
  (void)s;
  return out;
}

void require_unit_interval(double u) {
  if (!(u >= -1.0 && u <= 1.0)) throw Error(ErrorKind::kDomain, "Jacobi argument outside [-1, 1]");
}

}  // namespace

std::vector<double> jacobi_polynomials(double s, std::size_t count, double u) {
  require_order(s);
  require_unit_interval(u);
  if (count == 0) throw Error(ErrorKind::kDomain, "need at least one polynomial");
  return jacobi_values(s, count, u, false, jacobi_recurrence(s, 0.0, count)).p;
}

std::vector<double> jacobi_polynomial_derivatives(double s, std::size_t count, double u) {
  require_order(s);
  require_unit_interval(u);
  if (count == 0) throw Error(ErrorKind::kDomain, "need at least one polynomial");
  return jacobi_values(s, count, u, true, jacobi_recurrence(s, 0.0, count)).dp;
}

double jacobi_orthonormality_residual(double s, std::size_t max_degree) {
  require_order(s);
  const std::size_t count = max_degree + 1;
  const QuadratureRule rule = gauss_jacobi_rule(s, 0.0, count + 1);
  const RecurrenceCoefficients rc = jacobi_recurrence(s, 0.0, count);
  Matrix gram = Matrix::Zero(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const std::vector<double> p = jacobi_values(s, count, rule.nodes[q], false, rc).p;
    const Eigen::Map<const Vector> pv(p.data(), static_cast<Eigen::Index>(count));
    gram += rule.weights[q] * pv * pv.transpose();
  }
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double christoffel_darboux_sum(double s, std::size_t n, double u, double v) {
  const std::vector<double> pu = jacobi_polynomials(s, n, u);
  const std::vector<double> pv = jacobi_polynomials(s, n, v);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += pu[k] * pv[k];
  return sum;
}

double christoffel_darboux_closed(double s, std::size_t n, double u, double v) {
  require_order(s);
  require_unit_interval(u);
  require_unit_interval(v);
  if (n == 0) throw Error(ErrorKind::kDomain, "need n >= 1");
  const RecurrenceCoefficients rc = jacobi_recurrence(s, 0.0, n + 1);
  const double sbn = std::sqrt(rc.b[n]);
  if (u == v) {
    const JacobiValues ju = jacobi_values(s, n + 1, u, true, rc);
    return sbn * (ju.dp[n] * ju.p[n - 1] - ju.dp[n - 1] * ju.p[n]);
  }
  const JacobiValues ju = jacobi_values(s, n + 1, u, false, rc);
  const JacobiValues jv = jacobi_values(s, n + 1, v, false, rc);
  return sbn * (ju.p[n] * jv.p[n - 1] - ju.p[n - 1] * jv.p[n]) / (u - v);
}

KernelOperator jacobi_cd_kernel(double s, std::size_t n, const GroundSpacePtr& grid) {
  require_order(s);
  if (n == 0) throw Error(ErrorKind::kDomain, "need n >= 1");
  const double scale = 2.0 * static_cast<double>(n) * static_cast<double>(n);
  for (double x : grid->points()) {
    if (!(x > 0.0) || x > 2.0 * scale) {
      std::ostringstream os;
      os << "grid point " << x << " outside (0, " << 2.0 * scale << "] for n = " << n;
      throw Error(ErrorKind::kDomain, os.str());
    }
  }
  const RecurrenceCoefficients rc = jacobi_recurrence(s, 0.0, n);
  const auto m = static_cast<Eigen::Index>(grid->size());
  Matrix phi(m, static_cast<Eigen::Index>(n));
  const double inv_sqrt_scale = 1.0 / std::sqrt(scale);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = grid->point(static_cast<Index>(i));
    const double u = 1.0 - x / scale;
    // sqrt of the weight (1-u)^s = (x / scale)^s
    const double sqrt_weight = std::pow(x / scale, 0.5 * s);
    const std::vector<double> p = jacobi_values(s, n, u, false, rc).p;
    for (std::size_t k = 0; k < n; ++k) {
      phi(i, static_cast<Eigen::Index>(k)) = p[k] * sqrt_weight * inv_sqrt_scale;
    }
  }
  return KernelOperator(grid, phi * phi.transpose());
}

double bessel_kernel_value(double s, double x, double y) {
  require_order(s);
  if (!(x > 0.0) || !(y > 0.0)) throw Error(ErrorKind::kDomain, "Bessel kernel needs positive arguments");
  const double zx = std::sqrt(x);
  if (x == y) {
    const double js = bessel_j(s, zx);
    const double js1 = bessel_j(s + 1.0, zx);
    return 0.25 * (js * js + js1 * js1 - (2.0 * s / zx) * js * js1);
  }
  const double zy = std::sqrt(y);
  const double jx = bessel_j(s, zx);
  const double jy = bessel_j(s, zy);
  // z J_s'(z) = s J_s(z) - z J_{s+1}(z)
  const double hx = s * jx - zx * bessel_j(s + 1.0, zx);
  const double hy = s * jy - zy * bessel_j(s + 1.0, zy);
  return (jx * hy - jy * hx) / (2.0 * (x - y));
}

KernelOperator bessel_kernel(double s, const GroundSpacePtr& grid) {
  require_order(s);
  const auto m = static_cast<Eigen::Index>(grid->size());
  std::vector<double> js(static_cast<std::size_t>(m)), h(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = grid->point(static_cast<Index>(i));
    if (!(x > 0.0)) throw Error(ErrorKind::kDomain, "Bessel kernel grid must be strictly positive");
    const double z = std::sqrt(x);
    const double j0 = bessel_j(s, z);
    js[static_cast<std::size_t>(i)] = j0;
    h[static_cast<std::size_t>(i)] = s * j0 - z * bessel_j(s + 1.0, z);
  }
  Matrix k(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = grid->point(static_cast<Index>(i));
    k(i, i) = bessel_kernel_value(s, x, x);
    for (Eigen::Index j = 0; j < i; ++j) {
      const double y = grid->point(static_cast<Index>(j));
      const auto a = static_cast<std::size_t>(i);
      const auto b = static_cast<std::size_t>(j);
      k(i, j) = (js[a] * h[b] - js[b] * h[a]) / (2.0 * (x - y));
      k(j, i) = k(i, j);
    }
  }
  return KernelOperator(grid, std::move(k));
}

KernelOperator ClassicalKernelSpec::build() const {
  if (!grid) throw Error(ErrorKind::kArgument, "kernel spec needs a grid");
  return family == KernelFamily::kJacobiCd ? jacobi_cd_kernel(s, n, grid) : bessel_kernel(s, grid);
}

std::string HeineMehlerReport::to_csv() const {
  std::ostringstream os;
  os << "s,n,window_id,i1_distance,ratio_to_previous\n" << std::setprecision(17);
  for (const HeineMehlerRow& r : rows) {
    os << r.s << ',' << r.n << ',' << csv_field(r.window_id) << ',' << r.i1_distance << ',';
    if (std::isnan(r.ratio_to_previous)) {
      os << "";
    } else {
      os << r.ratio_to_previous;
    }
    os << '\n';
  }
  return os.str();
}

GroundSpacePtr default_hard_edge_grid() { return GroundSpace::gauss_legendre(0.0, 10.0, 160, "gl160(0,10]"); }

HeineMehlerReport heine_mehler_suite(double s, const std::vector<std::size_t>& n_list,
                                     const std::vector<Window>& windows, const GroundSpacePtr& grid,
                                     unsigned jobs) {
  require_order(s);
  if (n_list.empty()) throw Error(ErrorKind::kArgument, "heine_mehler_suite: empty n list");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw Error(ErrorKind::kArgument, "heine_mehler_suite: n list must increase");
  }
  const KernelOperator limit = bessel_kernel(s, grid);
  std::vector<KernelOperator> seq(n_list.size(), KernelOperator::zero(grid));
  parallel_for(n_list.size(), jobs, [&](std::size_t i) { seq[i] = jacobi_cd_kernel(s, n_list[i], grid); });
  std::vector<long> labels(n_list.begin(), n_list.end());
  HeineMehlerReport out{convergence_report(seq, limit, windows, labels), {}};
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    for (std::size_t w = 0; w < windows.size(); ++w) {
      HeineMehlerRow row;
      row.s = s;
      row.n = labels[i];
      row.window_id = out.report.window_ids()[w];
      row.i1_distance = out.report.distance(i, w);
      row.ratio_to_previous = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                                     : row.i1_distance / out.report.distance(i - 1, w);
      out.rows.push_back(row);
    }
  }
  return out;
}

}  // namespace dpplab
