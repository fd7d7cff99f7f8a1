#pragma once

#include <stdexcept>
#include <string>

namespace dpplab {

/// Error categories. The CLI maps kConfig to exit code 2 and everything else to 3.
enum class ErrorKind {
  kDimension,
  kDomain,
  kContract,
  kDegenerateBasis,
  kAngleDegeneracy,
  kInducibility,
  kConditioningImpossible,
  kSize,
  kArgument,
  kPrecondition,
  kConfig,
  kIo,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a basis is numerically degenerate; `index` names the first
/// offending vector (0-based).
class DegenerateBasisError : public Error {
 public:
  DegenerateBasisError(std::size_t index, double condition, const std::string& message)
      : Error(ErrorKind::kDegenerateBasis, message), index_(index), condition_(condition) {}
  std::size_t index() const noexcept { return index_; }
  double condition() const noexcept { return condition_; }

 private:
  std::size_t index_;
  double condition_;
};

class AngleDegeneracyError : public Error {
 public:
  AngleDegeneracyError(std::size_t index, double angle, double min_angle, const std::string& message)
      : Error(ErrorKind::kAngleDegeneracy, message),
        index_(index),
        angle_(angle),
        min_angle_(min_angle) {}
  std::size_t index() const noexcept { return index_; }
  double angle() const noexcept { return angle_; }
  double min_angle() const noexcept { return min_angle_; }

 private:
  std::size_t index_;
  double angle_;
  double min_angle_;
};

class InducibilityError : public Error {
 public:
  InducibilityError(double margin, const std::string& message)
      : Error(ErrorKind::kInducibility, message), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

}  // namespace dpplab
