#pragma once

// Berezin symbols and suprema of them over a space's domain.
//
// Suprema are found by a polar grid scan (full enumeration on finite sets)
// followed by cyclic coordinate golden-section refinement in (r, theta).
// Every reported number is a lower estimate of the true supremum: it is the
// modulus of the symbol at a concrete point that was evaluated.

#include <cstdint>
#include <span>
#include <vector>

#include "berlab/cmatrix.hpp"
#include "berlab/rkhs.hpp"

namespace berlab {

struct SearchConfig {
  std::size_t radial = 64;
  std::size_t angular = 128;
  std::size_t refine_iterations = 40;
  std::size_t multistarts = 16;  // product domains only
  double tolerance = 1e-6;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;

  /// Throws InvalidArgument when a count is zero or tolerance <= 0.
  void validate() const;

  /// Larger budget used by tight-mode checks.
  static SearchConfig tight();
};

struct BerezinEstimate {
  double value = 0.0;
  double coarse_value = 0.0;  // best value after the grid stage alone
  std::vector<DomainPoint> argmax;
  std::uint64_t seed = 0;
  bool lower_estimate = true;
};

cplx berezin_symbol(const ComplexMatrix& op, const SpaceModel& space, const DomainPoint& lambda);
cplx berezin_symbol(const ComplexMatrix& op, const DirectSumSpace& space,
                    std::span<const DomainPoint> lambdas);

BerezinEstimate berezin_number(const ComplexMatrix& op, const SpaceModel& space,
                               const SearchConfig& cfg = {});
BerezinEstimate berezin_number(const ComplexMatrix& op, const DirectSumSpace& space,
                               const SearchConfig& cfg = {});

/// Symbol values on a polar grid of `grid` radii by `grid` angles (all
/// points for finite sets; per-component coarsened grids for direct sums).
std::vector<cplx> berezin_set_sample(const ComplexMatrix& op, const SpaceModel& space,
                                     std::size_t grid);
std::vector<cplx> berezin_set_sample(const ComplexMatrix& op, const DirectSumSpace& space,
                                     std::size_t grid);

/// sup over lambda of (sum_i |<T_i k, k>|^p)^{1/p}.
BerezinEstimate euclid_berezin_number(std::span<const ComplexMatrix> ops, double p,
                                      const SpaceModel& space, const SearchConfig& cfg = {});
BerezinEstimate euclid_berezin_number(std::span<const ComplexMatrix> ops, double p,
                                      const DirectSumSpace& space, const SearchConfig& cfg = {});

}  // namespace berlab
