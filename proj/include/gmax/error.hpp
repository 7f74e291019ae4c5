#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmax {

enum class Errc {
  NonSquare,
  NotPSD,
  NonFinite,
  RhoOutOfRange,
  DimensionMismatch,
  EmptyVector,
  NonPositiveBeta,
  NegativeInput,
  NonPositiveSigma,
  NonPositiveInput,
  NonPositiveEpsilon,
  DeltaOutOfRange,
  POutOfRange,
  EmptyInput,
  ParseError,
  EmptyData,
  AlphaOutOfRange,
  ConfigInvalid,
  NoDominatingConstant,
  InvalidArgument,
  IoError,
};

std::string_view to_string(Errc code);

// All library failures are reported as gmax::Error carrying a stable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gmax
