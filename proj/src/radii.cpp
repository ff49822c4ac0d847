#include "berlab/radii.hpp"

#include <cmath>
#include <numbers>

#include "berlab/error.hpp"

namespace berlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfNormTol = 1e-7;
}  // namespace

double real_part_max(const ComplexMatrix& a, double theta) {
  const cplx phase = std::polar(1.0, theta);
  const std::size_t n = a.rows();
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h(i, j) = 0.5 * (phase * a(i, j) + std::conj(phase * a(j, i)));
    }
  }
  return herm_eig(h).eigenvalues.back();
}

RadiusEstimate numerical_radius(const ComplexMatrix& a, const RadiusOptions& opts) {
  if (!a.is_square()) throw Error(Errc::ShapeMismatch, "numerical radius needs a square matrix");
  if (opts.sweep == 0) throw Error(Errc::InvalidArgument, "sweep count must be positive");
  if (max_abs(a) == 0.0) return {};

  const double step = kTwoPi / static_cast<double>(opts.sweep);
  RadiusEstimate best{real_part_max(a, 0.0), 0.0};
  for (std::size_t j = 1; j < opts.sweep; ++j) {
    const double theta = step * static_cast<double>(j);
    const double v = real_part_max(a, theta);
    if (v > best.value) best = {v, theta};
  }

  double lo = best.theta - step;
  double hi = best.theta + step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = real_part_max(a, c);
  double fd = real_part_max(a, d);
  for (std::size_t it = 0; it < opts.refine; ++it) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = real_part_max(a, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = real_part_max(a, d);
    }
  }
  if (fc > best.value) best = {fc, c};
  if (fd > best.value) best = {fd, d};
  best.theta = std::fmod(best.theta, kTwoPi);
  if (best.theta < 0.0) best.theta += kTwoPi;
  return best;
}

CheckReport half_norm_check(const ComplexMatrix& a) {
  const double norm = operator_norm(a);
  const double w = numerical_radius(a).value;
  CheckReport lower = CheckReport::make("half_norm", "norm/2 <= w", 0.5 * norm, w, kHalfNormTol,
                                        CheckMode::Certified);
  lower.details.push_back(
      CheckReport::make("half_norm", "w <= norm", w, norm, kHalfNormTol, CheckMode::Certified));
  lower.provenance.dims = {a.rows()};
  return lower;
}

}  // namespace berlab
