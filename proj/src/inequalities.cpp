#include "berlab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "berlab/error.hpp"
#include "berlab/radii.hpp"

namespace berlab {

namespace {

constexpr double kPairTol = 1e-9;
constexpr double kExponentTol = 1e-12;
constexpr double kTightTol = 1e-5;
constexpr double kCertifiedTol = 1e-7;
constexpr double kCertifiedBlockTol = 1e-9;
constexpr double kPureTol = 1e-9;       // checks with no supremum search involved
constexpr double kIdentityTol = 1e-6;   // 2x2 numerical radius identity
constexpr double kContractionTol = 1e-9;
constexpr double kZeroEigenvalue = 1e-14;
constexpr double kPsdTol = 1e-10;
constexpr std::size_t kSampleGrid = 32;

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h = m + adjoint(m);
  h *= 0.5;
  return h;
}

/// P^e for PSD P, treating eigenvalues below 1e-14 max(1, ||P||) as zero.
ComplexMatrix psd_power(const ComplexMatrix& p, double e) {
  const ComplexMatrix h = hermitian_part(p);
  const HermEig eig = herm_eig(h);
  const double cutoff =
      kZeroEigenvalue * std::max({1.0, std::abs(eig.eigenvalues.front()), eig.eigenvalues.back()});
  return apply_fn(h, [e, cutoff](double t) { return t < cutoff ? 0.0 : std::pow(t, e); });
}

/// h(|x|) where h(s) = fn(s)^k.
ComplexMatrix fn_of_abs(const ComplexMatrix& x, const ScalarFn& fn, double k) {
  return apply_fn(abs_op(x), [&fn, k](double s) { return std::pow(fn(s), k); });
}

/// ber of a PSD right-hand-side operator: search estimate in tight mode,
/// its norm (= largest eigenvalue) in certified mode.
double rhs_ber(const ComplexMatrix& op, const SpaceModel& space, const CheckOptions& opts) {
  if (opts.mode == CheckMode::Tight) return berezin_number(op, space, opts.search).value;
  return operator_norm(op);
}

double search_tol(const CheckOptions& opts) { return check_tolerance(opts.mode); }

std::vector<std::size_t> dims_of(const DirectSumSpace& s) {
  std::vector<std::size_t> d;
  for (const SpaceModel& c : s.components()) d.push_back(c.dim());
  return d;
}

std::string describe(const DirectSumSpace& s) {
  std::string out;
  for (const SpaceModel& c : s.components()) {
    if (!out.empty()) out += "+";
    out += c.descriptor();
  }
  return out;
}

void require_square_dim(const ComplexMatrix& m, std::size_t dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw Error(Errc::ShapeMismatch, std::string(what) + " does not match the space dimension");
  }
}

std::vector<DomainPoint> sample_points(const SpaceModel& space) {
  std::vector<DomainPoint> pts;
  if (space.is_disk()) {
    pts.push_back(DomainPoint::disk(0.0));
    for (double r : {0.25, 0.5, 0.75, 1.0}) {
      for (int j = 0; j < 8; ++j) pts.push_back(DomainPoint::disk(std::polar(r, j * M_PI / 4.0)));
    }
  } else {
    for (std::size_t i = 0; i < space.point_count(); ++i) pts.push_back(DomainPoint::listed(i));
  }
  return pts;
}

struct OffDiagTerms {
  ComplexMatrix on_second;  // f^{k}(|X|) + g^{k}(|Y*|), acts on component 2
  ComplexMatrix on_first;   // f^{k}(|Y|) + g^{k}(|X*|), acts on component 1
};

OffDiagTerms off_diag_terms(const ComplexMatrix& x, const ComplexMatrix& y, const FGPair& pair,
                            double k) {
  const ScalarFn f = [&pair](double t) { return pair.f(t); };
  const ScalarFn g = [&pair](double t) { return pair.g(t); };
  return {fn_of_abs(x, f, k) + fn_of_abs(adjoint(y), g, k),
          fn_of_abs(y, f, k) + fn_of_abs(adjoint(x), g, k)};
}

/// sqrt(ber(P_second) ber(P_first)) for one off-diagonal pair.
double off_diag_bound_term(const ComplexMatrix& x, const ComplexMatrix& y, const FGPair& pair,
                           double k, const DirectSumSpace& spaces, const CheckOptions& opts) {
  const OffDiagTerms t = off_diag_terms(x, y, pair, k);
  const double b2 = rhs_ber(t.on_second, spaces.component(1), opts);
  const double b1 = rhs_ber(t.on_first, spaces.component(0), opts);
  return std::sqrt(std::max(0.0, b1) * std::max(0.0, b2));
}

struct TwoByTwoScalars {
  double a, d, b, c;
};

TwoByTwoScalars two_by_two_scalars(const BlockOperator& t, const CheckOptions& opts) {
  if (t.size() != 2) throw Error(Errc::ShapeMismatch, "expected a 2x2 block operator");
  const ComplexMatrix& A = t.block(0, 0);
  const ComplexMatrix& D = t.block(1, 1);
  TwoByTwoScalars s{};
  if (opts.mode == CheckMode::Tight) {
    s.a = berezin_number(A, t.spaces().component(0), opts.search).value;
    s.d = berezin_number(D, t.spaces().component(1), opts.search).value;
  } else {
    s.a = operator_norm(A);
    s.d = operator_norm(D);
  }
  s.b = operator_norm(t.block(0, 1));
  s.c = operator_norm(t.block(1, 0));
  return s;
}

/// (a + d + sqrt((a - d)^2 + (b + c)^2)) / 2
double two_by_two_bound(const TwoByTwoScalars& s) {
  const double off = s.b + s.c;
  return 0.5 * (s.a + s.d) + 0.5 * std::sqrt((s.a - s.d) * (s.a - s.d) + off * off);
}

CheckReport product_like(const char* id, std::span<const ComplexMatrix> as,
                         std::span<const ComplexMatrix> bs, std::span<const ComplexMatrix> xs,
                         const FGPair& pair, const ExponentSet& exps, const SpaceModel& space,
                         const CheckOptions& opts, ProductForm form) {
  if (as.empty() || as.size() != bs.size() || as.size() != xs.size()) {
    throw Error(Errc::ShapeMismatch, "operator lists must be nonempty and equally long");
  }
  const std::size_t dim = space.dim();
  for (std::size_t i = 0; i < as.size(); ++i) {
    require_square_dim(as[i], dim, "A");
    require_square_dim(bs[i], dim, "B");
    require_square_dim(xs[i], dim, "X");
  }
  const double r = exps.r();
  const double p = exps.p();
  const double q = exps.q();

  if (form == ProductForm::Contraction) {
    ComplexMatrix aa = adjoint(as[0]) * as[0];
    ComplexMatrix bb = adjoint(bs[0]) * bs[0];
    for (std::size_t i = 1; i < as.size(); ++i) {
      aa += adjoint(as[i]) * as[i];
      bb += adjoint(bs[i]) * bs[i];
    }
    const ComplexMatrix id = ComplexMatrix::identity(dim);
    const double min_a = herm_eig(hermitian_part(id - aa)).eigenvalues.front();
    const double min_b = herm_eig(hermitian_part(id - bb)).eigenvalues.front();
    if (min_a < -kContractionTol || min_b < -kContractionTol) {
      throw Error(Errc::ContractionRequired, "A*A <= I and B*B <= I are required");
    }
  }

  const ScalarFn f = [&pair](double t) { return pair.f(t); };
  const ScalarFn g = [&pair](double t) { return pair.g(t); };
  ComplexMatrix target = adjoint(as[0]) * xs[0] * bs[0];
  const double fk = form == ProductForm::General ? 2.0 : r * p;
  const double gk = form == ProductForm::General ? 2.0 : r * q;
  ComplexMatrix left = adjoint(bs[0]) * fn_of_abs(xs[0], f, fk) * bs[0];
  ComplexMatrix right = adjoint(as[0]) * fn_of_abs(adjoint(xs[0]), g, gk) * as[0];
  for (std::size_t i = 1; i < as.size(); ++i) {
    target += adjoint(as[i]) * xs[i] * bs[i];
    left += adjoint(bs[i]) * fn_of_abs(xs[i], f, fk) * bs[i];
    right += adjoint(as[i]) * fn_of_abs(adjoint(xs[i]), g, gk) * as[i];
  }
  if (form == ProductForm::General) {
    left = psd_power(left, r * p / 2.0);
    right = psd_power(right, r * q / 2.0);
  }
  const ComplexMatrix m = hermitian_part((1.0 / p) * left + (1.0 / q) * right);

  const double lhs = std::pow(berezin_number(target, space, opts.search).value, r);
  const double rhs = rhs_ber(m, space, opts);
  CheckReport rep = CheckReport::make(
      id, form == ProductForm::General ? "ber^r(sum A*XB) <= ber(M)" : "contraction form", lhs,
      rhs, search_tol(opts), opts.mode);
  rep.provenance.dims = {dim};
  rep.provenance.space = space.descriptor();
  rep.provenance.r = r;
  rep.provenance.p = p;
  rep.provenance.q = q;
  rep.provenance.alpha = exps.alpha();
  rep.provenance.pair = pair.label();
  return rep;
}

}  // namespace

double check_tolerance(CheckMode mode) {
  return mode == CheckMode::Tight ? kTightTol : kCertifiedTol;
}

FGPair FGPair::make(ScalarFn f, ScalarFn g, std::string label) {
  if (!f || !g) throw Error(Errc::InvalidPair, "f and g must be callable");
  for (int k = 0; k < 64; ++k) {
    const double t = k == 0 ? 0.0 : std::pow(10.0, -6.0 + 9.0 * (k - 1) / 62.0);
    const double fv = f(t);
    const double gv = g(t);
    if (!std::isfinite(fv) || !std::isfinite(gv) || fv < 0.0 || gv < 0.0) {
      throw Error(Errc::InvalidPair, label + ": f and g must be finite and nonnegative");
    }
    if (std::abs(fv * gv - t) > kPairTol * std::max(1.0, t)) {
      throw Error(Errc::InvalidPair, label + ": f(t) g(t) != t");
    }
  }
  return FGPair(std::move(f), std::move(g), std::move(label));
}

FGPair FGPair::power(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(Errc::BadExponent, "alpha must lie in [0, 1]");
  char buf[32];
  std::snprintf(buf, sizeof buf, "power:%g", alpha);
  return make([alpha](double t) { return std::pow(t, alpha); },
              [alpha](double t) { return std::pow(t, 1.0 - alpha); }, buf);
}

FGPair FGPair::ratio() {
  return make([](double t) { return t / (1.0 + t); }, [](double t) { return 1.0 + t; }, "ratio");
}

ExponentSet ExponentSet::make(double r, double p, double q, double alpha) {
  if (!(r >= 1.0)) throw Error(Errc::BadExponent, "r must be at least 1");
  if (!(p > 0.0 && q > 0.0) || std::abs(1.0 / p + 1.0 / q - 1.0) > kExponentTol) {
    throw Error(Errc::BadExponent, "p and q must be conjugate");
  }
  if (!(p * r >= q * r - kExponentTol && q * r >= 2.0 - kExponentTol)) {
    throw Error(Errc::BadExponent, "need p r >= q r >= 2");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(Errc::BadExponent, "alpha must lie in [0, 1]");
  return ExponentSet(r, p, q, alpha);
}

ExponentSet ExponentSet::from_q(double r, double q, double alpha) {
  if (!(q > 1.0)) throw Error(Errc::BadExponent, "q must exceed 1");
  return make(r, q / (q - 1.0), q, alpha);
}

CheckReport check_mccarty(const ComplexMatrix& t, std::span<const cplx> x, double r) {
  if (!(r >= 1.0)) throw Error(Errc::BadExponent, "r must be at least 1");
  if (!t.is_square() || t.rows() != x.size()) throw Error(Errc::ShapeMismatch, "vector length");
  if (norm2(x) > 1.0 + 1e-12) throw Error(Errc::InvalidArgument, "||x|| must not exceed 1");
  const HermEig eig = herm_eig(t);
  if (eig.eigenvalues.front() < -kPsdTol * std::max(1.0, eig.eigenvalues.back())) {
    throw Error(Errc::NegativeSpectrum, "T must be positive semidefinite");
  }
  const double base = std::max(0.0, quadratic_form(t, x).real());
  const ComplexMatrix tr = apply_fn(t, [r](double s) { return std::pow(s, r); });
  CheckReport rep = CheckReport::make("mccarty", "<Tx,x>^r <= <T^r x,x>", std::pow(base, r),
                                      quadratic_form(tr, x).real(), kPureTol, CheckMode::Certified);
  rep.provenance.dims = {t.rows()};
  rep.provenance.r = r;
  return rep;
}

CheckReport check_mixed_schwarz(const ComplexMatrix& t, std::span<const cplx> x,
                                std::span<const cplx> y, const FGPair& pair) {
  if (!t.is_square() || t.rows() != x.size() || t.rows() != y.size()) {
    throw Error(Errc::ShapeMismatch, "vector lengths must match the operator");
  }
  const ScalarFn f = [&pair](double s) { return pair.f(s); };
  const ScalarFn g = [&pair](double s) { return pair.g(s); };
  const double lhs = std::norm(inner(t * x, y));
  const double fx = quadratic_form(fn_of_abs(t, f, 2.0), x).real();
  const double gy = quadratic_form(fn_of_abs(adjoint(t), g, 2.0), y).real();
  CheckReport rep = CheckReport::make("mixed_schwarz", "|<Tx,y>|^2 <= <f^2(|T|)x,x><g^2(|T*|)y,y>",
                                      lhs, fx * gy, kPureTol, CheckMode::Certified);
  rep.provenance.dims = {t.rows()};
  rep.provenance.pair = pair.label();
  return rep;
}

CheckReport check_block_bound(const BlockOperator& t, const CheckOptions& opts) {
  const double lhs = berezin_number(t.flat(), t.spaces(), opts.search).value;
  const CompressionMode mode =
      opts.mode == CheckMode::Tight ? CompressionMode::BerDiag : CompressionMode::HouNorm;
  const Compression comp = compress(t, mode, opts.search);
  const double rhs = numerical_radius(comp.matrix).value;
  const double tol = opts.mode == CheckMode::Tight ? kTightTol : kCertifiedBlockTol;
  CheckReport rep = CheckReport::make("block_bound", "ber(T) <= w([t_ij])", lhs, rhs, tol, opts.mode);
  rep.provenance.dims = dims_of(t.spaces());
  rep.provenance.space = describe(t.spaces());
  return rep;
}

CheckReport check_two_by_two(const BlockOperator& t, const CheckOptions& opts) {
  const TwoByTwoScalars s = two_by_two_scalars(t, opts);
  const double lhs = berezin_number(t.flat(), t.spaces(), opts.search).value;
  CheckReport rep = CheckReport::make("two_by_two", "2x2 closed form", lhs, two_by_two_bound(s),
                                      search_tol(opts), opts.mode);
  rep.provenance.dims = dims_of(t.spaces());
  rep.provenance.space = describe(t.spaces());

  if (s.b == 0.0 && s.c == 0.0) {
    rep.details.push_back(CheckReport::make("two_by_two", "max rule", lhs, std::max(s.a, s.d),
                                            search_tol(opts), opts.mode));
  }

  // Numerical radius of the scalar compression, by a theta sweep, against
  // half the spectral radius of its symmetrization.
  const ComplexMatrix scalar{{s.a, s.b}, {s.c, s.d}};
  const ComplexMatrix sym{{2.0 * s.a, s.b + s.c}, {s.b + s.c, 2.0 * s.d}};
  const HermEig e = herm_eig(sym);
  const double half_r =
      0.5 * std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
  const double w = numerical_radius(scalar).value;
  rep.details.push_back(CheckReport::make("two_by_two", "w(compression) = r(symmetrized)/2",
                                          std::abs(w - half_r), 0.0, kIdentityTol, opts.mode));
  rep.details.push_back(CheckReport::make("two_by_two", "closed form = r(symmetrized)/2",
                                          std::abs(two_by_two_bound(s) - half_r), 0.0,
                                          kIdentityTol, opts.mode));
  return rep;
}

CheckReport check_offdiag_fg(const ComplexMatrix& x, const ComplexMatrix& y, const FGPair& pair,
                             double r, const DirectSumSpace& spaces, const CheckOptions& opts) {
  if (!(r >= 1.0)) throw Error(Errc::BadExponent, "r must be at least 1");
  const BlockOperator t = off_diag(x, y, spaces);
  const double lhs = std::pow(berezin_number(t.flat(), spaces, opts.search).value, r);
  const double rhs = std::pow(2.0, r - 2.0) * off_diag_bound_term(x, y, pair, 2.0 * r, spaces, opts);
  CheckReport rep = CheckReport::make("offdiag_fg", "ber^r([[0,X],[Y,0]]) bound", lhs, rhs,
                                      search_tol(opts), opts.mode);
  rep.provenance.dims = dims_of(spaces);
  rep.provenance.space = describe(spaces);
  rep.provenance.r = r;
  rep.provenance.pair = pair.label();
  return rep;
}

CheckReport check_offdiag_power(const ComplexMatrix& x, const ComplexMatrix& y, double alpha,
                                double r, const DirectSumSpace& spaces, const CheckOptions& opts) {
  CheckReport rep = check_offdiag_fg(x, y, FGPair::power(alpha), r, spaces, opts);
  rep.checker = "offdiag_power";
  rep.provenance.alpha = alpha;
  return rep;
}

CheckReport check_product(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& x,
                          const FGPair& pair, const ExponentSet& exps, const SpaceModel& space,
                          const CheckOptions& opts, ProductForm form) {
  return product_like("product", std::span(&a, 1), std::span(&b, 1), std::span(&x, 1), pair, exps,
                      space, opts, form);
}

CheckReport check_sums(std::span<const ComplexMatrix> as, std::span<const ComplexMatrix> bs,
                       std::span<const ComplexMatrix> xs, const FGPair& pair,
                       const ExponentSet& exps, const SpaceModel& space, const CheckOptions& opts,
                       ProductForm form) {
  return product_like("sums", as, bs, xs, pair, exps, space, opts, form);
}

CheckReport check_euclid_offdiag(std::span<const ComplexMatrix> xs,
                                 std::span<const ComplexMatrix> ys, const FGPair& pair, double p,
                                 const DirectSumSpace& spaces, const CheckOptions& opts) {
  if (!(p >= 1.0)) throw Error(Errc::BadExponent, "p must be at least 1");
  if (xs.empty() || xs.size() != ys.size()) {
    throw Error(Errc::ShapeMismatch, "X and Y lists must be nonempty and equally long");
  }
  std::vector<ComplexMatrix> flats;
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    flats.push_back(off_diag(xs[i], ys[i], spaces).flat());
    sum += off_diag_bound_term(xs[i], ys[i], pair, 2.0 * p, spaces, opts);
  }
  const double lhs = std::pow(euclid_berezin_number(flats, p, spaces, opts.search).value, p);
  CheckReport rep = CheckReport::make("euclid_offdiag", "ber_p^p of off-diagonal tuple", lhs,
                                      std::pow(2.0, p - 2.0) * sum, search_tol(opts), opts.mode);
  rep.provenance.dims = dims_of(spaces);
  rep.provenance.space = describe(spaces);
  rep.provenance.p = p;
  rep.provenance.pair = pair.label();
  return rep;
}

CheckReport check_euclid_blocks(std::span<const BlockOperator> ts, double p,
                                const CheckOptions& opts) {
  if (!(p >= 1.0)) throw Error(Errc::BadExponent, "p must be at least 1");
  if (ts.empty()) throw Error(Errc::ShapeMismatch, "at least one block operator is required");
  std::vector<ComplexMatrix> flats;
  double sum = 0.0;
  for (const BlockOperator& t : ts) {
    if (!(t.spaces() == ts.front().spaces())) {
      throw Error(Errc::ShapeMismatch, "all operators must act on the same direct sum");
    }
    flats.push_back(t.flat());
    const TwoByTwoScalars s = two_by_two_scalars(t, opts);
    sum += std::pow(2.0 * two_by_two_bound(s), p);
  }
  const DirectSumSpace& spaces = ts.front().spaces();
  const double lhs = std::pow(euclid_berezin_number(flats, p, spaces, opts.search).value, p);
  CheckReport rep = CheckReport::make("euclid_blocks", "ber_p^p of 2x2 tuple", lhs,
                                      std::pow(2.0, -p) * sum, search_tol(opts), opts.mode);
  rep.provenance.dims = dims_of(spaces);
  rep.provenance.space = describe(spaces);
  rep.provenance.p = p;
  return rep;
}

CheckReport check_basic_order(const ComplexMatrix& a, const SpaceModel& space,
                              const SearchConfig& cfg) {
  const double ber = berezin_number(a, space, cfg).value;
  const double w = numerical_radius(a).value;
  const double norm = operator_norm(a);
  double sample_max = 0.0;
  for (const cplx& v : berezin_set_sample(a, space, kSampleGrid)) {
    sample_max = std::max(sample_max, std::abs(v));
  }
  CheckReport rep =
      CheckReport::make("basic_order", "ber <= w", ber, w, kCertifiedTol, CheckMode::Certified);
  rep.details.push_back(
      CheckReport::make("basic_order", "w <= norm", w, norm, kCertifiedTol, CheckMode::Certified));
  rep.details.push_back(CheckReport::make("basic_order", "Ber sample within w", sample_max, w,
                                          kCertifiedTol, CheckMode::Certified));
  rep.provenance.dims = {space.dim()};
  rep.provenance.space = space.descriptor();
  return rep;
}

CheckReport check_embed_monotone(const ComplexMatrix& x, const ComplexMatrix& y,
                                 const SpaceModel& space, const SpaceModel& pad,
                                 const CheckOptions& opts) {
  require_square_dim(x, space.dim(), "X");
  require_square_dim(y, space.dim(), "Y");
  const DirectSumSpace spaces({space, pad});
  const std::vector<DomainPoint> points = sample_points(space);

  const auto facts = [&](const ComplexMatrix& op, const char* name) {
    const BlockOperator e = embed_corner(op, spaces);
    const double embedded = berezin_number(e.flat(), spaces, opts.search).value;
    const double plain = opts.mode == CheckMode::Tight
                             ? berezin_number(op, space, opts.search).value
                             : operator_norm(op);
    CheckReport order = CheckReport::make("embed_monotone",
                                          std::string("ber(embed ") + name + ") <= ber(" + name + ")",
                                          embedded, plain, search_tol(opts), opts.mode);
    double worst = 0.0;
    CVector padded(spaces.total_dim());
    for (const DomainPoint& p : points) {
      const CVector k = normalized_kernel(space, p);
      std::fill(padded.begin(), padded.end(), cplx{});
      std::copy(k.begin(), k.end(), padded.begin());
      worst = std::max(worst, std::abs(quadratic_form(op, k) - quadratic_form(e.flat(), padded)));
    }
    CheckReport ident = CheckReport::make(
        "embed_monotone", std::string("symbol identity for ") + name, worst, 0.0, kCertifiedTol,
        opts.mode);
    return std::pair{order, ident};
  };

  auto [x_order, x_ident] = facts(x, "X");
  auto [y_order, y_ident] = facts(y, "Y");
  CheckReport rep = std::move(x_order);
  rep.details = {std::move(x_ident), std::move(y_order), std::move(y_ident)};
  rep.provenance.dims = {space.dim(), pad.dim()};
  rep.provenance.space = space.descriptor() + "+" + pad.descriptor();
  return rep;
}

}  // namespace berlab
