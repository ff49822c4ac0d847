#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace berlab {

enum class CheckMode { Tight, Certified };

std::string_view to_string(CheckMode mode) noexcept;

/// Where an instance came from, enough to regenerate it.
struct Provenance {
  std::uint64_t seed = 0;
  std::vector<std::size_t> dims;
  std::string space;
  std::optional<double> r;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> alpha;
  std::string pair;
};

/// Outcome of one inequality lhs <= rhs checked with tolerance tol.
struct CheckReport {
  std::string checker;
  std::string label;  // which inequality inside the checker
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double tol = 0.0;
  bool pass = false;   // slack >= -tol, and both sides finite
  CheckMode mode = CheckMode::Certified;
  Provenance provenance;
  std::vector<CheckReport> details;

  static CheckReport make(std::string checker, std::string label, double lhs, double rhs,
                          double tol, CheckMode mode);

  /// This report and every detail report pass.
  bool all_pass() const;
  /// Smallest slack over this report and its details.
  double worst_slack() const;
};

}  // namespace berlab
