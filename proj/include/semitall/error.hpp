#pragma once

#include <stdexcept>
#include <string>

namespace semitall {

enum class ErrorCode {
  Domain,
  ChartViolation,
  Resource,
  DegenerateStart,
  Internal,
};

const char* to_string(ErrorCode code);

// Single exception type for every failure the library reports by throwing.
// Path-level numerical failures are not thrown; they are collected in
// SolveReport::failures.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace semitall
