#include "arl/errors.hpp"

namespace arl {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InfiniteGroup: return "InfiniteGroup";
    case ErrorKind::InvalidHom: return "InvalidHom";
    case ErrorKind::CompositionMismatch: return "CompositionMismatch";
    case ErrorKind::PrimeMismatch: return "PrimeMismatch";
    case ErrorKind::NotLPrimary: return "NotLPrimary";
    case ErrorKind::InvalidTower: return "InvalidTower";
    case ErrorKind::TailUnderivable: return "TailUnderivable";
    case ErrorKind::NotARladic: return "NotARladic";
    case ErrorKind::NotLAdic: return "NotLAdic";
    case ErrorKind::NonStabilizing: return "NonStabilizing";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NegativeResult: return "NegativeResult";
    case ErrorKind::FiniteIndex: return "FiniteIndex";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace arl
