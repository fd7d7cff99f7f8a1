#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dpplab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = std::size_t;

/// A finite discretization of a one-dimensional ground space (E, mu): grid
/// locations with the mu-mass of the cell each one represents.
///
/// Invariants (checked on construction): at least one point, strictly
/// increasing points, strictly positive weights.
class GroundSpace {
 public:
  GroundSpace(std::vector<double> points, std::vector<double> weights, std::string label);

  /// n equal cells on (a, b], one point at each cell midpoint.
  static std::shared_ptr<const GroundSpace> uniform(double a, double b, Index n, std::string label = {});

  /// n cells on (0, b] with edges b*(i/n)^power; points at cell midpoints in
  /// the reference variable. Refines geometrically toward 0.
  static std::shared_ptr<const GroundSpace> graded(double b, Index n, double power, std::string label = {});

  /// Gauss-Legendre nodes and weights on (a, b).
  static std::shared_ptr<const GroundSpace> gauss_legendre(double a, double b, Index n, std::string label = {});

  /// Points 1..n with unit weights (the counting measure).
  static std::shared_ptr<const GroundSpace> counting(Index n, std::string label = {});

  Index size() const noexcept { return points_.size(); }
  const std::vector<double>& points() const noexcept { return points_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::string& label() const noexcept { return label_; }

  double point(Index i) const { return points_.at(i); }
  double weight(Index i) const { return weights_.at(i); }

  Vector weight_vector() const;
  Vector sqrt_weight_vector() const;

  /// Samples a function at every grid point.
  template <typename F>
  Vector sample(F&& f) const {
    Vector v(static_cast<Eigen::Index>(size()));
    for (Index i = 0; i < size(); ++i) v(static_cast<Eigen::Index>(i)) = f(points_[i]);
    return v;
  }

  bool operator==(const GroundSpace& other) const;

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
  std::string label_;
};

using GroundSpacePtr = std::shared_ptr<const GroundSpace>;

/// A subset of grid indices (chi_D for a bounded D, E_0, B_n, tails).
///
/// Index sets are sorted and deduplicated. Windows selected by coordinate
/// range may come out empty; operations on empty windows return 0 and raise a
/// warning flag instead of failing.
class Window {
 public:
  Window() = default;
  Window(std::vector<Index> indices, std::string description);

  /// Indices lo..hi-1.
  static Window range(Index lo, Index hi, std::string description = {});
  /// All grid points with a <= x <= b.
  static Window interval(const GroundSpace& space, double a, double b, std::string description = {});
  static Window full(const GroundSpace& space, std::string description = "full");

  const std::vector<Index>& indices() const noexcept { return indices_; }
  const std::string& description() const noexcept { return description_; }
  Index size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(Index i) const;
  bool is_subset_of(const Window& other) const;

  /// Throws a dimension error if any index is outside the space.
  void validate(const GroundSpace& space) const;

  /// Indicator vector of the window on `space`.
  Vector indicator(const GroundSpace& space) const;

  Window united(const Window& other, std::string description = {}) const;
  Window complement(const GroundSpace& space, std::string description = {}) const;

 private:
  std::vector<Index> indices_;
  std::string description_;
};

}  // namespace dpplab
