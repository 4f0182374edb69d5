#include "tightproj/error.hpp"

namespace tightproj {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::infeasible_alpha: return "infeasible-alpha";
    case ErrorKind::insufficient_truncation: return "insufficient-truncation";
    case ErrorKind::contract: return "contract";
    case ErrorKind::model: return "model";
    case ErrorKind::not_applicable: return "not-applicable";
    case ErrorKind::partition_exhausted: return "partition-exhausted";
    case ErrorKind::obstruction: return "obstruction";
    case ErrorKind::certificate_failure: return "certificate-failure";
  }
  return "unknown";
}

ConvergenceError::ConvergenceError(double off_norm, int sweeps)
    : Error(ErrorKind::convergence,
            "jacobi_eigh: no convergence after " + std::to_string(sweeps) +
                " sweeps (off-diagonal norm " + std::to_string(off_norm) + ")"),
      off_norm_(off_norm),
      sweeps_(sweeps) {}

}  // namespace tightproj
