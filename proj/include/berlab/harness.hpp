#pragma once

// Seeded instance generation and batch execution of the checker catalog.
//
// Every instance is a pure function of (checker id, instance seed, mode),
// so suites can be split across threads without perturbing any stream and
// a single report can be regenerated from its provenance.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "berlab/cmatrix.hpp"
#include "berlab/report.hpp"
#include "berlab/rkhs.hpp"

namespace berlab {

enum class OperatorKind { General, Hermitian, Positive, Contraction, Unitary };

std::string_view to_string(OperatorKind kind) noexcept;

struct InstanceSpec {
  std::uint64_t seed = 0;
  std::size_t dim = 4;
  OperatorKind kind = OperatorKind::General;
  std::string space = "hardy:4";
  std::vector<double> r_values{1.0, 1.5, 2.0, 3.0};
  double q_min = 1.0 + 1e-3;
  double q_max = 2.0;
  std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
  std::string pair_family = "power";  // "power" or "ratio"

  /// BadSpec unless dim is in [1, 64] and the ranges are usable.
  void validate() const;
};

/// Complex Ginibre entries scaled by 1/sqrt(cols); deterministic in seed.
ComplexMatrix gen_matrix(std::uint64_t seed, std::size_t rows, std::size_t cols);

/// Ginibre base transformed per spec.kind:
///   hermitian   (G + G*)/2, mirrored so A == A* bit for bit
///   positive    G* G, mirrored likewise
///   contraction G / (||G|| + 1e-12)
///   unitary     Q of a modified Gram-Schmidt QR of G
ComplexMatrix gen_operator(const InstanceSpec& spec);

/// Random space: hardy:N or bergman:N with N in [2, 8], or a finite set of
/// 1..12 points with Ginibre features of dim 1..8.
SpaceModel gen_space(std::uint64_t seed);

/// The twelve checker ids, in catalog order.
const std::vector<std::string>& checker_catalog();

enum class Family {
  Random,    // seeded random instance
  Equality,  // the checker's documented equality case (Random if it has none)
};

/// Optional overrides of the drawn exponents (used to perturb an instance).
struct ExponentOverride {
  std::optional<double> r;
  std::optional<double> q;
  std::optional<double> alpha;
};

/// Generates and checks one instance. UnknownChecker for an unknown id.
CheckReport run_instance(const std::string& checker, std::uint64_t seed, CheckMode mode,
                         Family family = Family::Random, const ExponentOverride& exps = {});

/// Seed of instance `index` of `checker` in a suite with base seed `base`.
std::uint64_t instance_seed(std::uint64_t base, const std::string& checker, std::size_t index);

struct SuiteResult {
  std::vector<std::string> checkers;
  std::map<std::string, std::vector<CheckReport>> reports;
  std::size_t total = 0;
  std::size_t passed = 0;
  std::map<std::string, double> worst_slack;
  std::uint64_t seed = 0;
  CheckMode mode = CheckMode::Certified;
  double wall_seconds = 0.0;

  std::size_t failed() const noexcept { return total - passed; }
};

/// Worker count: BERLAB_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Runs n instances of every listed checker, in parallel across instances.
/// Reports are stored in instance order, so the result does not depend on
/// the number of workers. UnknownChecker before any work if an id is unknown.
SuiteResult run_suite(std::span<const std::string> checkers, std::size_t n, std::uint64_t seed,
                      CheckMode mode, std::size_t threads = 0);

struct TightnessResult {
  CheckReport best;
  double ratio = 0.0;  // lhs / rhs of best (0 when rhs vanishes)
  std::size_t evaluated = 0;
  Family family = Family::Random;
  ExponentOverride exponents;  // overrides that reproduce best, if any
  bool violation = false;      // ratio > 1 + 1e-6
};

/// Evaluates `budget` instances and keeps the one with the largest lhs/rhs.
/// Even steps draw a fresh instance; odd steps perturb the incumbent's
/// exponents. InvalidArgument when budget is 0.
TightnessResult tightness_search(const std::string& checker, std::size_t budget,
                                 std::uint64_t seed, Family family = Family::Random,
                                 CheckMode mode = CheckMode::Tight);

}  // namespace berlab
