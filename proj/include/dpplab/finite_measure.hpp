#pragma once

#include "dpplab/ground_space.hpp"

namespace dpplab {

/// Nonnegative atomic measure on the grid: one mass per point.
class FiniteMeasure {
 public:
  FiniteMeasure(GroundSpacePtr space, Vector masses);
  static FiniteMeasure zero(GroundSpacePtr space);

  const GroundSpacePtr& space() const noexcept { return space_; }
  const Vector& masses() const noexcept { return masses_; }
  double mass(Index i) const { return masses_(static_cast<Eigen::Index>(i)); }
  double total() const { return masses_.sum(); }
  /// Mass of a window.
  double mass_of(const Window& w) const;

 private:
  GroundSpacePtr space_;
  Vector masses_;
};

}  // namespace dpplab
