#pragma once

#include <stdexcept>
#include <string>

namespace entlock {

enum class ErrorKind {
  NotHermitian,
  DimMismatch,
  BadShape,
  NotAState,
  NotIsometry,
  NotCptp,
  RankTooLarge,
  OptimizerDiverged,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` distinguishes causes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace entlock
