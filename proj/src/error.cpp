#include "entlock/error.hpp"

namespace entlock {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::NotIsometry: return "NotIsometry";
    case ErrorKind::NotCptp: return "NotCptp";
    case ErrorKind::RankTooLarge: return "RankTooLarge";
    case ErrorKind::OptimizerDiverged: return "OptimizerDiverged";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace entlock
