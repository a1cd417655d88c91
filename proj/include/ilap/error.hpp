#pragma once

#include <stdexcept>
#include <string>

namespace ilap {

enum class ErrorKind {
  InvalidParameter,
  DegenerateBandwidth,
  Disconnected,
  DimensionMismatch,
  Parse,
  NonConvergence,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Library-wide exception. `kind()` lets callers map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidParameter, what);
}

}  // namespace ilap
