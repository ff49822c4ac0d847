#pragma once

// One checker per Berezin-number inequality. Each returns a CheckReport
// with lhs, rhs and slack; inequalities proved inside a checker's argument
// (max rule, 2x2 numerical radius identity, ...) are attached as details.
//
// Modes. Berezin numbers coming out of the supremum search are lower
// estimates, which is sound on a left-hand side but not on a right-hand
// side. Certified mode replaces every ber(.) on a right-hand side with the
// operator norm (ber <= w <= ||.||, and every bound is nondecreasing in
// those terms). Tight mode keeps the search estimates and uses a wider
// tolerance.

#include <span>
#include <string>
#include <vector>

#include "berlab/berezin.hpp"
#include "berlab/cmatrix.hpp"
#include "berlab/opmatrix.hpp"
#include "berlab/report.hpp"
#include "berlab/rkhs.hpp"

namespace berlab {

/// Nonnegative f, g on [0, inf) with f(t) g(t) = t.
class FGPair {
 public:
  /// Validates on 0 plus 63 log-spaced points in [1e-6, 1e3]; InvalidPair on failure.
  static FGPair make(ScalarFn f, ScalarFn g, std::string label);
  /// f = t^alpha, g = t^{1 - alpha}, alpha in [0, 1].
  static FGPair power(double alpha);
  /// f = t / (1 + t), g = 1 + t.
  static FGPair ratio();

  double f(double t) const { return f_(t); }
  double g(double t) const { return g_(t); }
  const std::string& label() const noexcept { return label_; }

 private:
  FGPair(ScalarFn f, ScalarFn g, std::string label)
      : f_(std::move(f)), g_(std::move(g)), label_(std::move(label)) {}

  ScalarFn f_;
  ScalarFn g_;
  std::string label_;
};

/// r >= 1, 1/p + 1/q = 1, p r >= q r >= 2, alpha in [0, 1].
class ExponentSet {
 public:
  static ExponentSet make(double r, double p, double q, double alpha = 0.5);
  /// p taken as the conjugate of q.
  static ExponentSet from_q(double r, double q, double alpha = 0.5);

  double r() const noexcept { return r_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double alpha() const noexcept { return alpha_; }

 private:
  ExponentSet(double r, double p, double q, double alpha) : r_(r), p_(p), q_(q), alpha_(alpha) {}
  double r_, p_, q_, alpha_;
};

struct CheckOptions {
  CheckMode mode = CheckMode::Certified;
  SearchConfig search{};
};

/// Which right-hand side the A*XB bounds use.
enum class ProductForm {
  General,      // [B* f^2(|X|) B]^{rp/2} / p + [A* g^2(|X*|) A]^{rq/2} / q
  Contraction,  // B* f^{rp}(|X|) B / p + A* g^{rq}(|X*|) A / q, needs A*A, B*B <= I
};

/// Tolerance used for search-dependent checks in the given mode.
double check_tolerance(CheckMode mode);

/// <t x, x>^r <= <t^r x, x> for PSD t, ||x|| <= 1, r >= 1.
CheckReport check_mccarty(const ComplexMatrix& t, std::span<const cplx> x, double r);

/// |<t x, y>|^2 <= <f^2(|t|) x, x> <g^2(|t*|) y, y>.
CheckReport check_mixed_schwarz(const ComplexMatrix& t, std::span<const cplx> x,
                                std::span<const cplx> y, const FGPair& pair);

/// ber(T) <= w([t_ij]) with ber(T_ii) on the diagonal and ||T_ij|| off it.
CheckReport check_block_bound(const BlockOperator& t, const CheckOptions& opts = {});

/// 2x2 closed form, the max rule when B = C = 0, and the identity
/// w([[a, b], [c, d]]) = r([[2a, b + c], [b + c, 2d]]) / 2 for the scalar compression.
CheckReport check_two_by_two(const BlockOperator& t, const CheckOptions& opts = {});

/// ber^r([[0, X], [Y, 0]]) <= 2^{r-2} ber^{1/2}(f^{2r}(|X|) + g^{2r}(|Y*|))
///                                    ber^{1/2}(f^{2r}(|Y|) + g^{2r}(|X*|)).
CheckReport check_offdiag_fg(const ComplexMatrix& x, const ComplexMatrix& y, const FGPair& pair,
                             double r, const DirectSumSpace& spaces, const CheckOptions& opts = {});

/// check_offdiag_fg with f = t^alpha, g = t^{1 - alpha}.
CheckReport check_offdiag_power(const ComplexMatrix& x, const ComplexMatrix& y, double alpha,
                                double r, const DirectSumSpace& spaces,
                                const CheckOptions& opts = {});

/// ber^r(A* X B) <= ber(M) with M from the chosen ProductForm.
CheckReport check_product(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& x,
                          const FGPair& pair, const ExponentSet& exps, const SpaceModel& space,
                          const CheckOptions& opts = {}, ProductForm form = ProductForm::General);

/// ber^r(sum A_i* X_i B_i) <= ber(M) with the sums inside M.
CheckReport check_sums(std::span<const ComplexMatrix> as, std::span<const ComplexMatrix> bs,
                       std::span<const ComplexMatrix> xs, const FGPair& pair,
                       const ExponentSet& exps, const SpaceModel& space,
                       const CheckOptions& opts = {}, ProductForm form = ProductForm::General);

/// ber_p^p(T_1..T_n) for off-diagonal T_i against the summed square-root bound.
CheckReport check_euclid_offdiag(std::span<const ComplexMatrix> xs,
                                 std::span<const ComplexMatrix> ys, const FGPair& pair, double p,
                                 const DirectSumSpace& spaces, const CheckOptions& opts = {});

/// ber_p^p(T_1..T_n) <= 2^{-p} sum (a_i + d_i + sqrt((a_i - d_i)^2 + (b_i + c_i)^2))^p.
CheckReport check_euclid_blocks(std::span<const BlockOperator> ts, double p,
                                const CheckOptions& opts = {});

/// ber <= w <= ||a|| and every sampled symbol value within w.
CheckReport check_basic_order(const ComplexMatrix& a, const SpaceModel& space,
                              const SearchConfig& cfg = {});

/// For x and y: ber([[x, 0], [0, 0]]) <= ber(x), and the symbol identity
/// <x k, k> = <[[x, 0], [0, 0]] (k, 0), (k, 0)> on sample points.
CheckReport check_embed_monotone(const ComplexMatrix& x, const ComplexMatrix& y,
                                 const SpaceModel& space, const SpaceModel& pad,
                                 const CheckOptions& opts = {});

}  // namespace berlab
