#include "dpplab/finite_measure.hpp"

#include "dpplab/errors.hpp"
#include "dpplab/weight_function.hpp"

namespace dpplab {

FiniteMeasure::FiniteMeasure(GroundSpacePtr space, Vector masses)
    : space_(std::move(space)), masses_(std::move(masses)) {
  if (masses_.size() != static_cast<Eigen::Index>(space_->size())) {
    throw Error(ErrorKind::kDimension, "measure masses differ in length from the ground space");
  }
  if (masses_.size() > 0 && !(masses_.minCoeff() >= 0.0)) {
    throw Error(ErrorKind::kDomain, "measure masses must be nonnegative");
  }
}

FiniteMeasure FiniteMeasure::zero(GroundSpacePtr space) {
  const auto n = static_cast<Eigen::Index>(space->size());
  return FiniteMeasure(std::move(space), Vector::Zero(n));
}

double FiniteMeasure::mass_of(const Window& w) const {
  w.validate(*space_);
  double s = 0.0;
  for (Index i : w.indices()) s += mass(i);
  return s;
}

WeightFunction::WeightFunction(GroundSpacePtr space, Vector values, WeightRole role)
    : space_(std::move(space)), values_(std::move(values)), role_(role) {
  if (values_.size() != static_cast<Eigen::Index>(space_->size())) {
    throw Error(ErrorKind::kDimension, "weight function length differs from the ground space");
  }
  if (!values_.allFinite()) throw Error(ErrorKind::kDomain, "weight function has non-finite values");
  if (values_.size() > 0 && values_.minCoeff() < 0.0) {
    throw Error(ErrorKind::kDomain, "weight function must be nonnegative");
  }
  if (role_ == WeightRole::kConditioning && values_.size() > 0 && values_.maxCoeff() > 1.0) {
    throw Error(ErrorKind::kDomain, "conditioning weight g must take values in [0, 1]");
  }
}

WeightFunction WeightFunction::constant(GroundSpacePtr space, double c, WeightRole role) {
  const auto n = static_cast<Eigen::Index>(space->size());
  return WeightFunction(std::move(space), Vector::Constant(n, c), role);
}

WeightFunction WeightFunction::indicator(GroundSpacePtr space, const Window& w, WeightRole role) {
  Vector v = w.indicator(*space);
  return WeightFunction(std::move(space), std::move(v), role);
}

}  // namespace dpplab
