#include "ilap/error.hpp"

namespace ilap {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::DegenerateBandwidth: return "degenerate-bandwidth";
    case ErrorKind::Disconnected: return "disconnected";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown";
}

}  // namespace ilap
