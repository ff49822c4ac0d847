#include "berlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>

#include "berlab/error.hpp"
#include "berlab/inequalities.hpp"
#include "berlab/opmatrix.hpp"
#include "berlab/rng.hpp"

namespace berlab {

namespace {

constexpr double kQFloor = 1.0 + 1e-3;
constexpr double kRatioViolation = 1.0 + 1e-6;
constexpr std::size_t kMaxDim = 8;
constexpr std::size_t kMaxPoints = 12;

// Stream tags, fixed so instances stay reproducible across versions.
enum Tag : std::uint64_t { kSpace = 1, kExponent, kPair, kOps, kVectors, kShape };

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::size_t draw_count(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

CVector gen_vector(Rng& rng, std::size_t n) {
  CVector v(n);
  for (cplx& e : v) e = {rng.normal(), rng.normal()};
  return v;
}

/// Vector with norm uniform in (0, 1].
CVector gen_ball_vector(Rng& rng, std::size_t n) {
  CVector v = gen_vector(rng, n);
  const double scale = (1.0 - rng.uniform()) / std::max(norm2(v), 1e-300);
  for (cplx& e : v) e *= scale;
  return v;
}

void mirror(ComplexMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < a.cols(); ++j) a(j, i) = std::conj(a(i, j));
  }
}

ComplexMatrix mgs_unitary(ComplexMatrix g) {
  const std::size_t n = g.rows();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx d{};
      for (std::size_t i = 0; i < n; ++i) d += std::conj(g(i, k)) * g(i, j);
      for (std::size_t i = 0; i < n; ++i) g(i, j) -= d * g(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
  }
  return g;
}

OperatorKind draw_kind(Rng& rng) { return static_cast<OperatorKind>(rng.below(5)); }

ComplexMatrix op_of(Rng& rng, std::size_t dim, OperatorKind kind) {
  InstanceSpec spec;
  spec.seed = rng.next_u64();
  spec.dim = dim;
  spec.kind = kind;
  return gen_operator(spec);
}

DirectSumSpace gen_sum(Rng& rng, std::size_t count) {
  std::vector<SpaceModel> parts;
  for (std::size_t i = 0; i < count; ++i) parts.push_back(gen_space(rng.next_u64()));
  return DirectSumSpace(std::move(parts));
}

struct Exponents {
  double r = 1.0;
  double q = 2.0;
  double alpha = 0.5;
};

double q_floor(double r) { return std::max(kQFloor, 2.0 / r); }

Exponents draw_exponents(Rng rng, const ExponentOverride& ov) {
  static constexpr double kR[] = {1.0, 1.5, 2.0, 3.0};
  static constexpr double kAlpha[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  Exponents e;
  e.r = kR[rng.below(4)];
  const double u = rng.uniform();
  e.alpha = kAlpha[rng.below(5)];
  if (ov.r) e.r = std::max(1.0, *ov.r);
  e.q = q_floor(e.r) + u * (2.0 - q_floor(e.r));
  if (ov.q) e.q = std::clamp(*ov.q, q_floor(e.r), 2.0);
  if (ov.alpha) e.alpha = std::clamp(*ov.alpha, 0.0, 1.0);
  return e;
}

FGPair draw_pair(Rng rng, double alpha) {
  return rng.below(5) == 0 ? FGPair::ratio() : FGPair::power(alpha);
}

ExponentSet exponent_set(const Exponents& e) {
  return ExponentSet::make(e.r, e.q / (e.q - 1.0), e.q, e.alpha);
}

BlockOperator random_blocks(Rng& rng, const DirectSumSpace& spaces) {
  BlockOperator::Grid g(spaces.size());
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t j = 0; j < spaces.size(); ++j) {
      const std::size_t di = spaces.component(i).dim();
      const std::size_t dj = spaces.component(j).dim();
      g[i].push_back(i == j ? op_of(rng, di, draw_kind(rng)) : gen_matrix(rng.next_u64(), di, dj));
    }
  }
  return assemble(std::move(g), spaces);
}

BlockOperator identity_blocks(const DirectSumSpace& spaces) {
  BlockOperator::Grid g(spaces.size());
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t j = 0; j < spaces.size(); ++j) {
      const std::size_t di = spaces.component(i).dim();
      const std::size_t dj = spaces.component(j).dim();
      g[i].push_back(i == j ? ComplexMatrix::identity(di) : ComplexMatrix(di, dj));
    }
  }
  return assemble(std::move(g), spaces);
}

DirectSumSpace hardy_pair(std::size_t n) {
  return DirectSumSpace({SpaceModel::hardy(n), SpaceModel::hardy(n)});
}

/// Everything a checker body needs to build its instance.
struct Ctx {
  std::uint64_t seed;
  CheckOptions opts;
  bool equality;
  Exponents exps;
  Rng rng;

  FGPair pair() const { return draw_pair(Rng(seed).derive(kPair), exps.alpha); }
};

using Body = std::function<CheckReport(Ctx&)>;

CheckReport mccarty(Ctx& c) {
  if (c.equality) {
    const CVector x{1.0, 0.0};
    return check_mccarty(ComplexMatrix::diagonal(std::vector<double>{1.0, 4.0}), x, c.exps.r);
  }
  const std::size_t d = draw_count(c.rng, 1, kMaxDim);
  const InstanceSpec spec{.seed = c.rng.next_u64(), .dim = d, .kind = OperatorKind::Positive};
  const CVector x = gen_ball_vector(c.rng, d);
  return check_mccarty(gen_operator(spec), x, c.exps.r);
}

CheckReport mixed_schwarz(Ctx& c) {
  if (c.equality) {
    const CVector x{0.0, 1.0};
    const CVector y{1.0, 0.0};
    return check_mixed_schwarz(ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}, x, y, FGPair::power(0.5));
  }
  const std::size_t d = draw_count(c.rng, 1, kMaxDim);
  const ComplexMatrix t = op_of(c.rng, d, draw_kind(c.rng));
  const CVector x = gen_vector(c.rng, d);
  const CVector y = gen_vector(c.rng, d);
  return check_mixed_schwarz(t, x, y, c.pair());
}

CheckReport block_bound(Ctx& c) {
  if (c.equality) return check_block_bound(identity_blocks(hardy_pair(4)), c.opts);
  const DirectSumSpace spaces = gen_sum(c.rng, draw_count(c.rng, 2, 3));
  return check_block_bound(random_blocks(c.rng, spaces), c.opts);
}

CheckReport two_by_two(Ctx& c) {
  if (c.equality) return check_two_by_two(identity_blocks(hardy_pair(4)), c.opts);
  const DirectSumSpace spaces = gen_sum(c.rng, 2);
  BlockOperator::Grid g = random_blocks(c.rng, spaces).blocks();
  if (c.rng.below(4) == 0) {  // exercise the max rule
    g[0][1] = ComplexMatrix(g[0][1].rows(), g[0][1].cols());
    g[1][0] = ComplexMatrix(g[1][0].rows(), g[1][0].cols());
  }
  return check_two_by_two(assemble(std::move(g), spaces), c.opts);
}

struct OffDiagInstance {
  DirectSumSpace spaces;
  ComplexMatrix x, y;
};

OffDiagInstance offdiag_instance(Ctx& c) {
  if (c.equality) {
    return {hardy_pair(4), ComplexMatrix::identity(4), ComplexMatrix::identity(4)};
  }
  DirectSumSpace spaces = gen_sum(c.rng, 2);
  const std::size_t d1 = spaces.component(0).dim();
  const std::size_t d2 = spaces.component(1).dim();
  ComplexMatrix x = gen_matrix(c.rng.next_u64(), d1, d2);
  ComplexMatrix y = gen_matrix(c.rng.next_u64(), d2, d1);
  return {std::move(spaces), std::move(x), std::move(y)};
}

CheckReport offdiag_fg(Ctx& c) {
  const OffDiagInstance in = offdiag_instance(c);
  if (c.equality) return check_offdiag_fg(in.x, in.y, FGPair::power(0.5), 1.0, in.spaces, c.opts);
  return check_offdiag_fg(in.x, in.y, c.pair(), c.exps.r, in.spaces, c.opts);
}

CheckReport offdiag_power(Ctx& c) {
  const OffDiagInstance in = offdiag_instance(c);
  if (c.equality) return check_offdiag_power(in.x, in.y, 0.5, 1.0, in.spaces, c.opts);
  return check_offdiag_power(in.x, in.y, c.exps.alpha, c.exps.r, in.spaces, c.opts);
}

/// A_i, B_i contractions scaled by 1/sqrt(n), so sum A_i* A_i <= I; X_i
/// contractions, which keeps the large powers r p / 2 in range.
CheckReport products(Ctx& c, std::size_t n) {
  if (c.equality) {
    const ComplexMatrix x = ComplexMatrix::diagonal(std::vector<double>{1.0, 2.0});
    const ExponentSet e = ExponentSet::make(1.0, 2.0, 2.0, 0.5);
    const FGPair sq = FGPair::power(0.5);
    const SpaceModel h2 = SpaceModel::hardy(2);
    if (n == 1) {
      const ComplexMatrix id = ComplexMatrix::identity(2);
      return check_product(id, id, x, sq, e, h2, c.opts);
    }
    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= std::sqrt(0.5);
    const std::vector<ComplexMatrix> as{half, half};
    const std::vector<ComplexMatrix> xs{x, x};
    return check_sums(as, as, xs, sq, e, h2, c.opts);
  }
  const SpaceModel space = gen_space(c.rng.next_u64());
  const std::size_t d = space.dim();
  const ProductForm form = c.rng.below(2) == 0 ? ProductForm::General : ProductForm::Contraction;
  std::vector<ComplexMatrix> as, bs, xs;
  for (std::size_t i = 0; i < n; ++i) {
    as.push_back((1.0 / std::sqrt(double(n))) * op_of(c.rng, d, OperatorKind::Contraction));
    bs.push_back((1.0 / std::sqrt(double(n))) * op_of(c.rng, d, OperatorKind::Contraction));
    xs.push_back(op_of(c.rng, d, OperatorKind::Contraction));
  }
  const ExponentSet e = exponent_set(c.exps);
  if (n == 1) return check_product(as[0], bs[0], xs[0], c.pair(), e, space, c.opts, form);
  return check_sums(as, bs, xs, c.pair(), e, space, c.opts, form);
}

CheckReport product(Ctx& c) { return products(c, 1); }

CheckReport sums(Ctx& c) { return products(c, c.equality ? 2 : draw_count(c.rng, 1, 3)); }

CheckReport euclid_offdiag(Ctx& c) {
  if (c.equality) {
    const std::vector<ComplexMatrix> id{ComplexMatrix::identity(4)};
    return check_euclid_offdiag(id, id, FGPair::power(0.5), 1.0, hardy_pair(4), c.opts);
  }
  const DirectSumSpace spaces = gen_sum(c.rng, 2);
  const std::size_t d1 = spaces.component(0).dim();
  const std::size_t d2 = spaces.component(1).dim();
  const std::size_t n = draw_count(c.rng, 1, 3);
  std::vector<ComplexMatrix> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(gen_matrix(c.rng.next_u64(), d1, d2));
    ys.push_back(gen_matrix(c.rng.next_u64(), d2, d1));
  }
  return check_euclid_offdiag(xs, ys, c.pair(), c.exps.r, spaces, c.opts);
}

CheckReport euclid_blocks(Ctx& c) {
  if (c.equality) {
    const std::vector<BlockOperator> ts{identity_blocks(hardy_pair(4))};
    return check_euclid_blocks(ts, 1.0, c.opts);
  }
  const DirectSumSpace spaces = gen_sum(c.rng, 2);
  const std::size_t n = draw_count(c.rng, 1, 3);
  std::vector<BlockOperator> ts;
  for (std::size_t i = 0; i < n; ++i) ts.push_back(random_blocks(c.rng, spaces));
  return check_euclid_blocks(ts, c.exps.r, c.opts);
}

CheckReport basic_order(Ctx& c) {
  if (c.equality) {
    return check_basic_order(ComplexMatrix::identity(4), SpaceModel::hardy(4), c.opts.search);
  }
  const SpaceModel space = gen_space(c.rng.next_u64());
  return check_basic_order(op_of(c.rng, space.dim(), draw_kind(c.rng)), space, c.opts.search);
}

// No equality family: ber(embed X) < ber(X) strictly whenever X != 0.
CheckReport embed_monotone(Ctx& c) {
  const SpaceModel space = gen_space(c.rng.next_u64());
  const SpaceModel pad = gen_space(c.rng.next_u64());
  const ComplexMatrix x = op_of(c.rng, space.dim(), draw_kind(c.rng));
  const ComplexMatrix y = op_of(c.rng, space.dim(), draw_kind(c.rng));
  return check_embed_monotone(x, y, space, pad, c.opts);
}

struct Entry {
  const char* id;
  Body body;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"mccarty", mccarty},
      {"mixed_schwarz", mixed_schwarz},
      {"block_bound", block_bound},
      {"two_by_two", two_by_two},
      {"offdiag_fg", offdiag_fg},
      {"offdiag_power", offdiag_power},
      {"product", product},
      {"sums", sums},
      {"euclid_offdiag", euclid_offdiag},
      {"euclid_blocks", euclid_blocks},
      {"basic_order", basic_order},
      {"embed_monotone", embed_monotone},
  };
  return entries;
}

const Body& find_body(const std::string& id) {
  for (const Entry& e : registry()) {
    if (id == e.id) return e.body;
  }
  throw Error(Errc::UnknownChecker, "unknown checker '" + id + "'");
}

void stamp_seed(CheckReport& rep, std::uint64_t seed) {
  rep.provenance.seed = seed;
  for (CheckReport& d : rep.details) stamp_seed(d, seed);
}

double ratio_of(const CheckReport& rep) {
  if (rep.rhs > 1e-300) return rep.lhs / rep.rhs;
  return rep.lhs > 1e-300 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

std::string_view to_string(OperatorKind kind) noexcept {
  switch (kind) {
    case OperatorKind::General: return "general";
    case OperatorKind::Hermitian: return "hermitian";
    case OperatorKind::Positive: return "positive";
    case OperatorKind::Contraction: return "contraction";
    case OperatorKind::Unitary: return "unitary";
  }
  return "unknown";
}

void InstanceSpec::validate() const {
  if (dim < 1 || dim > 64) throw Error(Errc::BadSpec, "dim must lie in [1, 64]");
  if (r_values.empty() || alphas.empty()) throw Error(Errc::BadSpec, "empty exponent range");
  if (!(q_min > 1.0 && q_min <= q_max && q_max <= 2.0)) {
    throw Error(Errc::BadSpec, "need 1 < q_min <= q_max <= 2");
  }
  if (pair_family != "power" && pair_family != "ratio") {
    throw Error(Errc::BadSpec, "pair family must be 'power' or 'ratio'");
  }
}

ComplexMatrix gen_matrix(std::uint64_t seed, std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw Error(Errc::BadSpec, "matrix dimensions must be positive");
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(cols));
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = {scale * re, scale * im};
    }
  }
  return g;
}

ComplexMatrix gen_operator(const InstanceSpec& spec) {
  spec.validate();
  ComplexMatrix g = gen_matrix(spec.seed, spec.dim, spec.dim);
  switch (spec.kind) {
    case OperatorKind::General:
      return g;
    case OperatorKind::Hermitian: {
      ComplexMatrix h = g + adjoint(g);
      h *= 0.5;
      mirror(h);
      return h;
    }
    case OperatorKind::Positive: {
      ComplexMatrix p = adjoint(g) * g;
      mirror(p);
      return p;
    }
    case OperatorKind::Contraction: {
      const double nrm = operator_norm(g);
      g *= 1.0 / (nrm + 1e-12);
      return g;
    }
    case OperatorKind::Unitary:
      return mgs_unitary(std::move(g));
  }
  throw Error(Errc::BadSpec, "unknown operator kind");
}

SpaceModel gen_space(std::uint64_t seed) {
  Rng rng = Rng(seed).derive(kSpace);
  switch (rng.below(3)) {
    case 0: return SpaceModel::hardy(draw_count(rng, 2, kMaxDim));
    case 1: return SpaceModel::bergman(draw_count(rng, 2, kMaxDim));
    default: break;
  }
  const std::size_t points = draw_count(rng, 1, kMaxPoints);
  const std::size_t dim = draw_count(rng, 1, kMaxDim);
  std::vector<CVector> features;
  for (std::size_t i = 0; i < points; ++i) features.push_back(gen_vector(rng, dim));
  return SpaceModel::finite_set({}, std::move(features));
}

const std::vector<std::string>& checker_catalog() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const Entry& e : registry()) out.emplace_back(e.id);
    return out;
  }();
  return ids;
}

std::uint64_t instance_seed(std::uint64_t base, const std::string& checker, std::size_t index) {
  return splitmix64(splitmix64(base ^ fnv1a(checker)) + index);
}

CheckReport run_instance(const std::string& checker, std::uint64_t seed, CheckMode mode,
                         Family family, const ExponentOverride& exps) {
  const Body& body = find_body(checker);
  Ctx ctx{seed,
          CheckOptions{mode, mode == CheckMode::Tight ? SearchConfig::tight() : SearchConfig{}},
          family == Family::Equality, draw_exponents(Rng(seed).derive(kExponent), exps),
          Rng(seed).derive(kOps)};
  CheckReport rep = body(ctx);
  stamp_seed(rep, seed);
  return rep;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("BERLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SuiteResult run_suite(std::span<const std::string> checkers, std::size_t n, std::uint64_t seed,
                      CheckMode mode, std::size_t threads) {
  for (const std::string& id : checkers) find_body(id);
  const auto start = std::chrono::steady_clock::now();

  SuiteResult out;
  out.checkers.assign(checkers.begin(), checkers.end());
  out.seed = seed;
  out.mode = mode;

  const std::size_t jobs = checkers.size() * n;
  std::vector<CheckReport> results(jobs);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs;) {
      const std::string& id = checkers[k / n];
      const std::uint64_t s = instance_seed(seed, id, k % n);
      try {
        results[k] = run_instance(id, s, mode);
      } catch (const Error& e) {
        CheckReport rep = CheckReport::make(id, e.what(), 0.0, 0.0, 0.0, mode);
        rep.pass = false;
        rep.provenance.seed = s;
        results[k] = std::move(rep);
      }
    }
  };
  const std::size_t workers = std::min(threads == 0 ? worker_count() : threads,
                                       std::max<std::size_t>(jobs, 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  for (std::size_t k = 0; k < jobs; ++k) {
    const std::string& id = checkers[k / n];
    CheckReport& rep = results[k];
    ++out.total;
    if (rep.all_pass()) ++out.passed;
    const double worst = rep.worst_slack();
    auto [it, fresh] = out.worst_slack.try_emplace(id, worst);
    if (!fresh) it->second = std::min(it->second, worst);
    out.reports[id].push_back(std::move(rep));
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

TightnessResult tightness_search(const std::string& checker, std::size_t budget,
                                 std::uint64_t seed, Family family, CheckMode mode) {
  find_body(checker);
  if (budget == 0) throw Error(Errc::InvalidArgument, "budget must be at least 1");
  TightnessResult best;
  best.family = family;
  best.ratio = -1.0;
  Rng jitter = Rng(seed).derive(fnv1a(checker));
  for (std::size_t step = 0; step < budget; ++step) {
    std::uint64_t s = instance_seed(seed, checker, step);
    ExponentOverride ov;
    if (step % 2 == 1 && best.ratio >= 0.0) {
      const Provenance& prov = best.best.provenance;
      s = prov.seed;
      const double r0 = prov.r.value_or(prov.p.value_or(1.0));
      ov.r = std::clamp(r0 + 0.25 * jitter.normal(), 1.0, 4.0);
      if (prov.q) ov.q = *prov.q + 0.05 * jitter.normal();
      if (prov.alpha) ov.alpha = *prov.alpha + 0.1 * jitter.normal();
    }
    const CheckReport rep = run_instance(checker, s, mode, family, ov);
    ++best.evaluated;
    const double ratio = ratio_of(rep);
    if (ratio > best.ratio) {
      best.ratio = ratio;
      best.best = rep;
      best.exponents = ov;
    }
  }
  best.violation = !(best.ratio <= kRatioViolation);
  return best;
}

}  // namespace berlab
