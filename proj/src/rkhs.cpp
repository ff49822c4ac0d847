#include "berlab/rkhs.hpp"

#include <cmath>

#include "berlab/error.hpp"

namespace berlab {

namespace {
constexpr double kDiskSlack = 1e-12;
}

SpaceModel SpaceModel::hardy(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "space dimension must be positive");
  return SpaceModel(SpaceKind::TruncatedHardy, n);
}

SpaceModel SpaceModel::bergman(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "space dimension must be positive");
  return SpaceModel(SpaceKind::TruncatedBergman, n);
}

SpaceModel SpaceModel::finite_set(std::vector<std::string> labels, std::vector<CVector> features) {
  if (features.empty()) throw Error(Errc::InvalidArgument, "finite set needs at least one point");
  const std::size_t dim = features.front().size();
  if (dim == 0) throw Error(Errc::InvalidArgument, "feature vectors must be nonempty");
  if (labels.empty()) {
    for (std::size_t i = 0; i < features.size(); ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != features.size()) {
    throw Error(Errc::InvalidArgument, "label count differs from point count");
  }
  for (const CVector& row : features) {
    if (row.size() != dim) throw Error(Errc::InvalidArgument, "ragged feature table");
    double s = 0.0;
    for (const cplx& z : row) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(Errc::InvalidArgument, "feature entry is not finite");
      }
      s += std::norm(z);
    }
    if (s == 0.0) throw Error(Errc::InvalidArgument, "all-zero feature vector");
  }
  SpaceModel m(SpaceKind::FiniteSet, dim);
  m.labels_ = std::move(labels);
  m.features_ = std::move(features);
  return m;
}

void SpaceModel::require_in_domain(const DomainPoint& p) const {
  if (is_disk()) {
    if (!(std::abs(p.z) <= 1.0 + kDiskSlack)) {
      throw Error(Errc::OutOfDomain, "point lies outside the closed unit disk");
    }
  } else if (p.index >= features_.size()) {
    throw Error(Errc::OutOfDomain, "point index is not in the finite set");
  }
}

double SpaceModel::kernel_coeffs(const DomainPoint& p, std::span<cplx> out) const {
  double s = 0.0;
  switch (kind_) {
    case SpaceKind::TruncatedHardy:
    case SpaceKind::TruncatedBergman: {
      const cplx zc = std::conj(p.z);
      cplx power = 1.0;
      const bool bergman = kind_ == SpaceKind::TruncatedBergman;
      for (std::size_t n = 0; n < dim_; ++n) {
        out[n] = bergman ? std::sqrt(static_cast<double>(n + 1)) * power : power;
        s += std::norm(out[n]);
        power *= zc;
      }
      break;
    }
    case SpaceKind::FiniteSet: {
      const CVector& row = features_[p.index];
      for (std::size_t n = 0; n < dim_; ++n) {
        out[n] = std::conj(row[n]);
        s += std::norm(out[n]);
      }
      break;
    }
  }
  return s;
}

std::string SpaceModel::descriptor() const {
  switch (kind_) {
    case SpaceKind::TruncatedHardy: return "hardy:" + std::to_string(dim_);
    case SpaceKind::TruncatedBergman: return "bergman:" + std::to_string(dim_);
    case SpaceKind::FiniteSet:
      return "finite:" + std::to_string(features_.size()) + "x" + std::to_string(dim_);
  }
  return {};
}

DirectSumSpace::DirectSumSpace(std::vector<SpaceModel> components)
    : components_(std::move(components)) {
  if (components_.size() < 2) {
    throw Error(Errc::ArityMismatch, "a direct sum needs at least two components");
  }
  for (const SpaceModel& c : components_) total_dim_ += c.dim();
}

KernelVector kernel_vec(const SpaceModel& space, const DomainPoint& lambda) {
  space.require_in_domain(lambda);
  KernelVector k{CVector(space.dim()), 0.0};
  k.norm = std::sqrt(space.kernel_coeffs(lambda, k.coeffs));
  return k;
}

CVector normalized_kernel(const SpaceModel& space, const DomainPoint& lambda) {
  KernelVector k = kernel_vec(space, lambda);
  for (cplx& z : k.coeffs) z /= k.norm;
  return std::move(k.coeffs);
}

CVector direct_sum_kernel(const DirectSumSpace& space, std::span<const DomainPoint> lambdas) {
  if (lambdas.size() != space.size()) {
    throw Error(Errc::ArityMismatch, "one point per component is required");
  }
  CVector out(space.total_dim());
  double s = 0.0;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const SpaceModel& c = space.component(i);
    c.require_in_domain(lambdas[i]);
    s += c.kernel_coeffs(lambdas[i], std::span<cplx>(out).subspan(offset, c.dim()));
    offset += c.dim();
  }
  const double norm = std::sqrt(s);
  for (cplx& z : out) z /= norm;
  return out;
}

std::vector<std::size_t> block_offsets(const DirectSumSpace& space) {
  std::vector<std::size_t> offsets;
  offsets.reserve(space.size());
  std::size_t acc = 0;
  for (const SpaceModel& c : space.components()) {
    offsets.push_back(acc);
    acc += c.dim();
  }
  return offsets;
}

}  // namespace berlab
