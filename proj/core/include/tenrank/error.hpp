#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tenrank {

enum class ErrorCode {
  DivisionByZero,
  ZeroPolynomial,
  ParseError,
  IndexOutOfShape,
  ScalarKindMismatch,
  ArityMismatch,
  DimMismatch,
  ShapeMismatch,
  ZeroTensor,
  BadSpec,
  BadDim,
  UnsupportedArity,
  WeakCertificate,
  NotBlockPyramidal,
  CertificateSubjectMismatch,
  NotMinimalRank,
  RearrangementFailed,
  NotADegeneration,
  InvalidEpsDecomposition,
  ArityCapExceeded,
  UnverifiedDecomposition,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `code()` is what callers branch on;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tenrank
