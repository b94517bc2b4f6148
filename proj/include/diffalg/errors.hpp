#pragma once

#include <stdexcept>
#include <string>

namespace diffalg {

enum class Errc {
  MissingImage,
  NotInvertible,
  ZeroPolynomial,
  OrderCapExceeded,
  ZeroElement,
  DegreeTooLarge,
  NotUnimodular,
  UnknownVariable,
  ZeroScalar,
  ZeroWeight,
  NonConstantRequired,
  NotNilpotent,
  NotCommuting,
  NotClosed,
  LinearlyDependent,
  InvalidD,
  NotEquivariant,
  NotSurjective,
  NotInjective,
  NonPolynomialInTau,
  SocleNotSimple,
  ZeroOnSocle,
  NotASubmodule,
  ZeroVector,
  NotUnipotentAfterTwist,
  LogExpressionFailure,
  NotTwoStepModule,
  ClassificationFailure,
  NeedsManualAnalysis,
  DimensionMismatch,
  ParseError,
  PostconditionFailed,
  InvalidConfig,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace diffalg
