#pragma once

#include <stdexcept>
#include <string>

namespace plotting {

enum class ErrorCode {
  invalid_argument,
  out_of_range,
  empty_selection,
  infeasible_bound,
  invalid_horizon,
  malformed_model,
  capacity_exceeded,
  infeasible_spec,
  spawn_failure,
  parse_failure,
  io_failure,
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception for contract violations and environment failures.
/// Expected outcomes (null moves, UNSAT, timeouts) are values, not exceptions.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace plotting
