#include "dpplab/ground_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dpplab/errors.hpp"
#include "dpplab/quadrature.hpp"

namespace dpplab {

GroundSpace::GroundSpace(std::vector<double> points, std::vector<double> weights, std::string label)
    : points_(std::move(points)), weights_(std::move(weights)), label_(std::move(label)) {
  if (points_.empty()) throw Error(ErrorKind::kDomain, "ground space needs at least one point");
  if (points_.size() != weights_.size()) {
    throw Error(ErrorKind::kDimension, "ground space: points and weights differ in length");
  }
  for (Index i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i]) || !std::isfinite(weights_[i])) {
      throw Error(ErrorKind::kDomain, "ground space: non-finite point or weight");
    }
    if (!(weights_[i] > 0.0)) {
      std::ostringstream os;
      os << "ground space: weight " << i << " is not strictly positive (" << weights_[i] << ")";
      throw Error(ErrorKind::kDomain, os.str());
    }
    if (i > 0 && !(points_[i] > points_[i - 1])) {
      std::ostringstream os;
      os << "ground space: points not strictly increasing at index " << i;
      throw Error(ErrorKind::kDomain, os.str());
    }
  }
}

GroundSpacePtr GroundSpace::uniform(double a, double b, Index n, std::string label) {
  if (n == 0 || !(b > a)) throw Error(ErrorKind::kDomain, "uniform grid needs n >= 1 and b > a");
  std::vector<double> pts(n), wts(n);
  const double h = (b - a) / static_cast<double>(n);
  for (Index i = 0; i < n; ++i) {
    pts[i] = a + (static_cast<double>(i) + 0.5) * h;
    wts[i] = h;
  }
  if (label.empty()) label = "uniform";
  return std::make_shared<const GroundSpace>(std::move(pts), std::move(wts), std::move(label));
}

GroundSpacePtr GroundSpace::graded(double b, Index n, double power, std::string label) {
  if (n == 0 || !(b > 0.0) || !(power >= 1.0)) {
    throw Error(ErrorKind::kDomain, "graded grid needs n >= 1, b > 0, power >= 1");
  }
  std::vector<double> pts(n), wts(n);
  const double dn = static_cast<double>(n);
  for (Index i = 0; i < n; ++i) {
    const double lo = b * std::pow(static_cast<double>(i) / dn, power);
    const double hi = b * std::pow(static_cast<double>(i + 1) / dn, power);
    pts[i] = b * std::pow((static_cast<double>(i) + 0.5) / dn, power);
    wts[i] = hi - lo;
  }
  if (label.empty()) label = "graded";
  return std::make_shared<const GroundSpace>(std::move(pts), std::move(wts), std::move(label));
}

GroundSpacePtr GroundSpace::gauss_legendre(double a, double b, Index n, std::string label) {
  if (n == 0 || !(b > a)) throw Error(ErrorKind::kDomain, "Gauss-Legendre grid needs n >= 1 and b > a");
  const QuadratureRule rule = gauss_jacobi_rule(0.0, 0.0, n);
  std::vector<double> pts(n), wts(n);
  const double half = 0.5 * (b - a);
  for (Index i = 0; i < n; ++i) {
    pts[i] = a + half * (rule.nodes[i] + 1.0);
    wts[i] = half * rule.weights[i];
  }
  if (label.empty()) label = "gauss-legendre";
  return std::make_shared<const GroundSpace>(std::move(pts), std::move(wts), std::move(label));
}

GroundSpacePtr GroundSpace::counting(Index n, std::string label) {
  std::vector<double> pts(n), wts(n, 1.0);
  for (Index i = 0; i < n; ++i) pts[i] = static_cast<double>(i + 1);
  if (label.empty()) label = "counting";
  return std::make_shared<const GroundSpace>(std::move(pts), std::move(wts), std::move(label));
}

Vector GroundSpace::weight_vector() const {
  return Eigen::Map<const Vector>(weights_.data(), static_cast<Eigen::Index>(weights_.size()));
}

Vector GroundSpace::sqrt_weight_vector() const { return weight_vector().cwiseSqrt(); }

bool GroundSpace::operator==(const GroundSpace& other) const {
  return points_ == other.points_ && weights_ == other.weights_;
}

Window::Window(std::vector<Index> indices, std::string description)
    : indices_(std::move(indices)), description_(std::move(description)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

Window Window::range(Index lo, Index hi, std::string description) {
  std::vector<Index> idx;
  for (Index i = lo; i < hi; ++i) idx.push_back(i);
  if (description.empty()) {
    std::ostringstream os;
    os << "[" << lo << "," << hi << ")";
    description = os.str();
  }
  return Window(std::move(idx), std::move(description));
}

Window Window::interval(const GroundSpace& space, double a, double b, std::string description) {
  std::vector<Index> idx;
  for (Index i = 0; i < space.size(); ++i) {
    const double x = space.point(i);
    if (x >= a && x <= b) idx.push_back(i);
  }
  if (description.empty()) {
    std::ostringstream os;
    os << "[" << a << "," << b << "]";
    description = os.str();
  }
  return Window(std::move(idx), std::move(description));
}

Window Window::full(const GroundSpace& space, std::string description) {
  return range(0, space.size(), std::move(description));
}

bool Window::contains(Index i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

bool Window::is_subset_of(const Window& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(), indices_.end());
}

void Window::validate(const GroundSpace& space) const {
  if (!indices_.empty() && indices_.back() >= space.size()) {
    std::ostringstream os;
    os << "window '" << description_ << "' index " << indices_.back() << " out of bounds for "
       << space.size() << " points";
    throw Error(ErrorKind::kDimension, os.str());
  }
}

Vector Window::indicator(const GroundSpace& space) const {
  validate(space);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  for (Index i : indices_) v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

Window Window::united(const Window& other, std::string description) const {
  std::vector<Index> idx;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                 std::back_inserter(idx));
  if (description.empty()) description = description_ + "+" + other.description_;
  return Window(std::move(idx), std::move(description));
}

Window Window::complement(const GroundSpace& space, std::string description) const {
  validate(space);
  std::vector<Index> idx;
  for (Index i = 0; i < space.size(); ++i) {
    if (!contains(i)) idx.push_back(i);
  }
  if (description.empty()) description = "not " + description_;
  return Window(std::move(idx), std::move(description));
}

}  // namespace dpplab
