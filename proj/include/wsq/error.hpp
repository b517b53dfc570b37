#pragma once

#include <stdexcept>
#include <string>

namespace wsq {

enum class ErrorKind {
  AllZeroWindow,
  NonFinite,
  NotHermitian,
  AsymmetricBeta,
  WindowOutOfRange,
  ZeroState,
  OmegaOutOfBand,
  NonPositive,
  AlphaOutOfRange,
  TruncationFailure,
  BothZero,
  ExcessiveShift,
  SingularDeterminant,
  CWNotSupported,
  LeakageExceeded,
  InvalidArgument,
  Config,
  Io,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wsq
