#pragma once

#include <cstddef>

#include "berlab/cmatrix.hpp"
#include "berlab/report.hpp"

namespace berlab {

struct RadiusEstimate {
  double value = 0.0;
  double theta = 0.0;  // in [0, 2 pi)
};

struct RadiusOptions {
  std::size_t sweep = 360;
  std::size_t refine = 40;
};

/// lambda_max of Re(e^{i theta} a) = (e^{i theta} a + e^{-i theta} a*) / 2.
double real_part_max(const ComplexMatrix& a, double theta);

/// w(a) = max over theta of real_part_max(a, theta): uniform sweep then
/// golden-section refinement around the best angle.
RadiusEstimate numerical_radius(const ComplexMatrix& a, const RadiusOptions& opts = {});

/// ||a|| / 2 <= w(a) <= ||a||, tolerance 1e-7. Second inequality is a detail.
CheckReport half_norm_check(const ComplexMatrix& a);

}  // namespace berlab
