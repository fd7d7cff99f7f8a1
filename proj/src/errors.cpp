#include "dpplab/errors.hpp"

namespace dpplab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kContract: return "contract";
    case ErrorKind::kDegenerateBasis: return "degenerate-basis";
    case ErrorKind::kAngleDegeneracy: return "angle-degeneracy";
    case ErrorKind::kInducibility: return "inducibility";
    case ErrorKind::kConditioningImpossible: return "conditioning-impossible";
    case ErrorKind::kSize: return "size";
    case ErrorKind::kArgument: return "argument";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

}  // namespace dpplab
