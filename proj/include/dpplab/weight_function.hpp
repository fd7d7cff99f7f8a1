#pragma once

#include "dpplab/ground_space.hpp"

namespace dpplab {

enum class WeightRole {
  kConditioning,  // "g": values in [0, 1]
  kEmbedding,     // "f": bounded, nonnegative
};

/// Nonnegative per-point function on a ground space.
class WeightFunction {
 public:
  WeightFunction(GroundSpacePtr space, Vector values, WeightRole role);

  static WeightFunction constant(GroundSpacePtr space, double c, WeightRole role);
  static WeightFunction indicator(GroundSpacePtr space, const Window& w, WeightRole role = WeightRole::kConditioning);

  const GroundSpacePtr& space() const noexcept { return space_; }
  const Vector& values() const noexcept { return values_; }
  WeightRole role() const noexcept { return role_; }
  double operator()(Index i) const { return values_(static_cast<Eigen::Index>(i)); }
  Index size() const noexcept { return static_cast<Index>(values_.size()); }

 private:
  GroundSpacePtr space_;
  Vector values_;
  WeightRole role_;
};

}  // namespace dpplab
