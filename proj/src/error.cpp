#include "berlab/error.hpp"

namespace berlab {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NegativeSpectrum: return "NegativeSpectrum";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::BadExponent: return "BadExponent";
    case Errc::ContractionRequired: return "ContractionRequired";
    case Errc::InvalidPair: return "InvalidPair";
    case Errc::BadSpec: return "BadSpec";
    case Errc::UnknownChecker: return "UnknownChecker";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace berlab
