#pragma once

#include <stdexcept>
#include <string>

namespace tightproj {

enum class ErrorKind {
  invalid_input,
  dimension_mismatch,
  convergence,
  infeasible_alpha,
  insufficient_truncation,
  contract,
  model,
  not_applicable,
  partition_exhausted,
  obstruction,
  certificate_failure,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the Jacobi solver when the sweep cap is hit.
class ConvergenceError : public Error {
 public:
  ConvergenceError(double off_norm, int sweeps);

  double off_norm() const noexcept { return off_norm_; }
  int sweeps() const noexcept { return sweeps_; }

 private:
  double off_norm_;
  int sweeps_;
};

}  // namespace tightproj
