#include "gmax/error.hpp"

namespace gmax {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NonSquare: return "NonSquare";
    case Errc::NotPSD: return "NotPSD";
    case Errc::NonFinite: return "NonFinite";
    case Errc::RhoOutOfRange: return "RhoOutOfRange";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyVector: return "EmptyVector";
    case Errc::NonPositiveBeta: return "NonPositiveBeta";
    case Errc::NegativeInput: return "NegativeInput";
    case Errc::NonPositiveSigma: return "NonPositiveSigma";
    case Errc::NonPositiveInput: return "NonPositiveInput";
    case Errc::NonPositiveEpsilon: return "NonPositiveEpsilon";
    case Errc::DeltaOutOfRange: return "DeltaOutOfRange";
    case Errc::POutOfRange: return "POutOfRange";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptyData: return "EmptyData";
    case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::NoDominatingConstant: return "NoDominatingConstant";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace gmax
