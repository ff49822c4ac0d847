#pragma once

// Finite-dimensional reproducing kernel Hilbert spaces. Every space is
// described by an orthonormal basis {e_n}; operators act on coefficient
// vectors in that basis and the kernel at lambda has coefficients
// conj(e_n(lambda)).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "berlab/cmatrix.hpp"

namespace berlab {

enum class SpaceKind { TruncatedHardy, TruncatedBergman, FiniteSet };

/// A point of a space's domain: a complex number for the disk models,
/// an index into the point list for finite sets.
struct DomainPoint {
  cplx z{};
  std::size_t index = 0;

  static DomainPoint disk(cplx z) { return {z, 0}; }
  static DomainPoint listed(std::size_t i) { return {cplx{}, i}; }

  bool operator==(const DomainPoint&) const = default;
};

struct KernelVector {
  CVector coeffs;
  double norm = 0.0;
};

class SpaceModel {
 public:
  /// Span of z^0 .. z^{n-1} in the Hardy space of the disk.
  static SpaceModel hardy(std::size_t n);
  /// Span of sqrt(k+1) z^k, k < n, in the Bergman space of the disk.
  static SpaceModel bergman(std::size_t n);
  /// features[i][n] = e_n(point i). Rows must be nonzero and equally long.
  static SpaceModel finite_set(std::vector<std::string> labels, std::vector<CVector> features);

  SpaceKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  bool is_disk() const noexcept { return kind_ != SpaceKind::FiniteSet; }

  std::size_t point_count() const noexcept { return features_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::span<const cplx> feature_row(std::size_t i) const { return features_.at(i); }

  /// Throws OutOfDomain unless the point lies in the (closed) domain.
  void require_in_domain(const DomainPoint& p) const;

  /// Writes the kernel coefficients into out (length dim) and returns the
  /// squared norm. Does not validate the point.
  double kernel_coeffs(const DomainPoint& p, std::span<cplx> out) const;

  /// "hardy:N", "bergman:N" or "finite:<points>x<dim>".
  std::string descriptor() const;

  bool operator==(const SpaceModel&) const = default;

 private:
  SpaceModel(SpaceKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  SpaceKind kind_;
  std::size_t dim_;
  std::vector<std::string> labels_;
  std::vector<CVector> features_;
};

class DirectSumSpace {
 public:
  /// Needs at least two components (ArityMismatch otherwise).
  explicit DirectSumSpace(std::vector<SpaceModel> components);

  const std::vector<SpaceModel>& components() const noexcept { return components_; }
  const SpaceModel& component(std::size_t i) const { return components_.at(i); }
  std::size_t size() const noexcept { return components_.size(); }
  std::size_t total_dim() const noexcept { return total_dim_; }

  bool operator==(const DirectSumSpace&) const = default;

 private:
  std::vector<SpaceModel> components_;
  std::size_t total_dim_ = 0;
};

KernelVector kernel_vec(const SpaceModel& space, const DomainPoint& lambda);
CVector normalized_kernel(const SpaceModel& space, const DomainPoint& lambda);

/// Stacked (k_{l1}, ..., k_{ln}) divided by sqrt(sum ||k_{li}||^2).
CVector direct_sum_kernel(const DirectSumSpace& space, std::span<const DomainPoint> lambdas);

std::vector<std::size_t> block_offsets(const DirectSumSpace& space);

}  // namespace berlab
