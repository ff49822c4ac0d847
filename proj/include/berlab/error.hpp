#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace berlab {

enum class Errc {
  NotHermitian,
  NoConvergence,
  NegativeSpectrum,
  OutOfDomain,
  ArityMismatch,
  DimMismatch,
  ShapeMismatch,
  BadExponent,
  ContractionRequired,
  InvalidPair,
  BadSpec,
  UnknownChecker,
  InvalidArgument,
  Parse,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace berlab
