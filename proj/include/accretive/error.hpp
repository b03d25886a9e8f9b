#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace accretive {

enum class Errc {
  NonpositiveLength,
  TooFewPoints,
  OrderTooHigh,
  NonellipticCoefficient,
  SignViolation,
  DimensionMismatch,
  NonpositiveOrder,
  SingularGram,
  NonAccretive,
  NonpositiveEpsilon,
  NotHermitian,
  ConvergenceFailure,
  NotPositiveDefinite,
  SpectrumHit,
  WindowTooSmall,
  NonpositiveValue,
  InsufficientSizes,
  ParseError,
  ConstraintError,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the pipeline in particular) can attribute it to a stage.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }  ///< message without the code prefix

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace accretive
