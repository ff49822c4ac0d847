#include "berlab/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "berlab/error.hpp"
#include "berlab/rng.hpp"

namespace berlab {

void SearchConfig::validate() const {
  if (radial == 0 || angular == 0 || refine_iterations == 0 || multistarts == 0) {
    throw Error(Errc::InvalidArgument, "search counts must be at least one");
  }
  if (!(tolerance > 0.0)) throw Error(Errc::InvalidArgument, "search tolerance must be positive");
}

SearchConfig SearchConfig::tight() {
  SearchConfig cfg;
  cfg.radial = 96;
  cfg.angular = 192;
  cfg.refine_iterations = 60;
  cfg.multistarts = 32;
  return cfg;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kRefinedCells = 4;
constexpr int kMaxCycles = 6;

using Objective = std::function<double(std::span<const cplx>)>;

struct ComponentGrid {
  std::vector<DomainPoint> points;
  std::vector<CVector> coeffs;
  std::vector<double> norm_sq;
  double dr = 0.0;
  double dtheta = 0.0;
};

std::size_t root_count(std::size_t budget, std::size_t n) {
  if (n == 1) return budget;
  return static_cast<std::size_t>(
      std::ceil(std::pow(static_cast<double>(budget), 1.0 / static_cast<double>(n)) - 1e-9));
}

ComponentGrid build_grid(const SpaceModel& space, std::size_t radial, std::size_t angular) {
  ComponentGrid g;
  if (space.is_disk()) {
    radial = std::max<std::size_t>(radial, 2);
    angular = std::max<std::size_t>(angular, 1);
    g.dr = 1.0 / static_cast<double>(radial - 1);
    g.dtheta = kTwoPi / static_cast<double>(angular);
    g.points.push_back(DomainPoint::disk(0.0));
    for (std::size_t i = 1; i < radial; ++i) {
      const double r = static_cast<double>(i) / static_cast<double>(radial - 1);
      for (std::size_t j = 0; j < angular; ++j) {
        g.points.push_back(DomainPoint::disk(std::polar(r, g.dtheta * static_cast<double>(j))));
      }
    }
  } else {
    for (std::size_t i = 0; i < space.point_count(); ++i) g.points.push_back(DomainPoint::listed(i));
  }
  g.coeffs.reserve(g.points.size());
  for (const DomainPoint& p : g.points) {
    CVector c(space.dim());
    g.norm_sq.push_back(space.kernel_coeffs(p, c));
    g.coeffs.push_back(std::move(c));
  }
  return g;
}

/// Mixed-radix increment over the product grid; false once it wraps.
bool advance(std::vector<std::size_t>& idx, const std::vector<ComponentGrid>& grids) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < grids[k].points.size()) return true;
    idx[k] = 0;
  }
  return false;
}

/// Coordinates of a point during refinement.
struct Coord {
  double r = 0.0;
  double theta = 0.0;
  std::size_t index = 0;
};

class ProductSearch {
 public:
  ProductSearch(std::span<const SpaceModel> comps, const SearchConfig& cfg, Objective objective)
      : comps_(comps), cfg_(cfg), objective_(std::move(objective)) {
    std::size_t total = 0;
    for (const SpaceModel& c : comps_) total += c.dim();
    scratch_.resize(total);
  }

  BerezinEstimate run() {
    cfg_.validate();
    const std::size_t n = comps_.size();
    std::vector<ComponentGrid> grids;
    for (const SpaceModel& c : comps_) {
      grids.push_back(build_grid(c, root_count(cfg_.radial, n), root_count(cfg_.angular, n)));
    }

    // Stage 1: product grid in mixed-radix order, keeping the first-found
    // best cells.
    struct Cell {
      double value;
      std::vector<std::size_t> idx;
    };
    std::vector<Cell> top;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      const double v = eval_grid(grids, idx);
      if (top.size() < kRefinedCells || v > top.back().value) {
        auto pos = std::find_if(top.begin(), top.end(), [&](const Cell& c) { return v > c.value; });
        top.insert(pos, Cell{v, idx});
        if (top.size() > kRefinedCells) top.pop_back();
      }
      if (!advance(idx, grids)) break;
    }

    BerezinEstimate est;
    est.seed = cfg_.seed;
    est.coarse_value = top.front().value;
    best_value_ = top.front().value;
    best_.clear();
    for (std::size_t c = 0; c < n; ++c) best_.push_back(to_coord(grids[c].points[top.front().idx[c]], c));

    bool all_finite = true;
    for (const SpaceModel& c : comps_) all_finite = all_finite && !c.is_disk();
    if (!(n == 1 && all_finite)) {
      std::vector<std::vector<Coord>> starts;
      for (const Cell& cell : top) {
        std::vector<Coord> s;
        for (std::size_t c = 0; c < n; ++c) s.push_back(to_coord(grids[c].points[cell.idx[c]], c));
        starts.push_back(std::move(s));
      }
      if (n >= 2) {
        Rng rng(cfg_.seed);
        for (std::size_t m = 0; m < cfg_.multistarts; ++m) {
          std::vector<Coord> s;
          for (std::size_t c = 0; c < n; ++c) {
            Coord co;
            if (comps_[c].is_disk()) {
              co.r = std::sqrt(rng.uniform());
              co.theta = kTwoPi * rng.uniform();
            } else {
              co.index = rng.below(comps_[c].point_count());
            }
            s.push_back(co);
          }
          starts.push_back(std::move(s));
        }
      }
      for (auto& s : starts) refine(grids, std::move(s));
    }

    est.value = best_value_;
    for (std::size_t c = 0; c < n; ++c) est.argmax.push_back(to_point(best_[c], c));
    return est;
  }

 private:
  double eval_grid(const std::vector<ComponentGrid>& grids, const std::vector<std::size_t>& idx) {
    double s = 0.0;
    std::size_t off = 0;
    for (std::size_t c = 0; c < grids.size(); ++c) {
      const CVector& k = grids[c].coeffs[idx[c]];
      std::copy(k.begin(), k.end(), scratch_.begin() + static_cast<std::ptrdiff_t>(off));
      off += k.size();
      s += grids[c].norm_sq[idx[c]];
    }
    const double inv = 1.0 / std::sqrt(s);
    for (cplx& z : scratch_) z *= inv;
    return objective_(scratch_);
  }

  double eval(const std::vector<Coord>& coords) {
    double s = 0.0;
    std::size_t off = 0;
    for (std::size_t c = 0; c < comps_.size(); ++c) {
      const std::size_t d = comps_[c].dim();
      s += comps_[c].kernel_coeffs(to_point(coords[c], c), std::span<cplx>(scratch_).subspan(off, d));
      off += d;
    }
    const double inv = 1.0 / std::sqrt(s);
    for (cplx& z : scratch_) z *= inv;
    return objective_(scratch_);
  }

  Coord to_coord(const DomainPoint& p, std::size_t c) const {
    Coord co;
    if (comps_[c].is_disk()) {
      co.r = std::abs(p.z);
      co.theta = co.r == 0.0 ? 0.0 : std::arg(p.z);
    } else {
      co.index = p.index;
    }
    return co;
  }

  DomainPoint to_point(const Coord& co, std::size_t c) const {
    if (comps_[c].is_disk()) return DomainPoint::disk(std::polar(std::min(co.r, 1.0), co.theta));
    return DomainPoint::listed(co.index);
  }

  void offer(const std::vector<Coord>& coords, double v) {
    if (v > best_value_) {
      best_value_ = v;
      best_ = coords;
    }
  }

  // Golden-section maximization of one coordinate on [lo, hi]; also probes
  // both ends so boundary maxima are hit exactly.
  void line_search(std::vector<Coord>& cur, double& cur_value, double lo, double hi,
                   double Coord::*field) {
    const auto at = [&](double x) {
      std::vector<Coord> probe = cur;
      probe[probe_comp_].*field = x;
      return std::pair{eval(probe), probe};
    };
    const auto consider = [&](const std::pair<double, std::vector<Coord>>& cand) {
      offer(cand.second, cand.first);
      if (cand.first > cur_value) {
        cur_value = cand.first;
        cur = cand.second;
      }
    };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto fa = at(lo);
    auto fb = at(hi);
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    auto fc = at(c);
    auto fd = at(d);
    for (std::size_t it = 0; it < cfg_.refine_iterations; ++it) {
      if (fc.first >= fd.first) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - inv_phi * (hi - lo);
        fc = at(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + inv_phi * (hi - lo);
        fd = at(d);
      }
    }
    consider(fa);
    consider(fb);
    consider(fc);
    consider(fd);
  }

  void refine(const std::vector<ComponentGrid>& grids, std::vector<Coord> cur) {
    double cur_value = eval(cur);
    offer(cur, cur_value);
    const std::size_t n = comps_.size();
    for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
      const double before = cur_value;
      for (std::size_t c = 0; c < n; ++c) {
        probe_comp_ = c;
        if (comps_[c].is_disk()) {
          const double r0 = cur[c].r;
          line_search(cur, cur_value, std::max(0.0, r0 - grids[c].dr),
                      std::min(1.0, r0 + grids[c].dr), &Coord::r);
          if (cur[c].r > 0.0) {
            const double t0 = cur[c].theta;
            line_search(cur, cur_value, t0 - grids[c].dtheta, t0 + grids[c].dtheta, &Coord::theta);
          }
        } else if (n >= 2) {
          for (std::size_t i = 0; i < comps_[c].point_count(); ++i) {
            std::vector<Coord> probe = cur;
            probe[c].index = i;
            const double v = eval(probe);
            offer(probe, v);
            if (v > cur_value) {
              cur_value = v;
              cur = std::move(probe);
            }
          }
        }
      }
      if (!(cur_value > before + 1e-15 * std::max(1.0, std::abs(before)))) break;
    }
  }

  std::span<const SpaceModel> comps_;
  SearchConfig cfg_;
  Objective objective_;
  CVector scratch_;
  double best_value_ = 0.0;
  std::vector<Coord> best_;
  std::size_t probe_comp_ = 0;
};

void require_op_dim(const ComplexMatrix& op, std::size_t dim) {
  if (!op.is_square() || op.rows() != dim) {
    throw Error(Errc::DimMismatch, "operator dimension does not match the space");
  }
}

Objective modulus_objective(const ComplexMatrix& op) {
  return [&op](std::span<const cplx> u) { return std::abs(quadratic_form(op, u)); };
}

Objective euclid_objective(std::span<const ComplexMatrix> ops, double p) {
  return [ops, p](std::span<const cplx> u) {
    double s = 0.0;
    for (const ComplexMatrix& op : ops) s += std::pow(std::abs(quadratic_form(op, u)), p);
    return std::pow(s, 1.0 / p);
  };
}

std::vector<cplx> sample(const ComplexMatrix& op, std::span<const SpaceModel> comps,
                         std::size_t grid) {
  if (grid == 0) throw Error(Errc::InvalidArgument, "grid count must be positive");
  const std::size_t n = comps.size();
  std::vector<ComponentGrid> grids;
  std::size_t total = 0;
  for (const SpaceModel& c : comps) {
    grids.push_back(build_grid(c, root_count(grid, n), root_count(grid, n)));
    total += c.dim();
  }
  std::vector<cplx> out;
  std::vector<std::size_t> idx(n, 0);
  CVector u(total);
  for (;;) {
    double s = 0.0;
    std::size_t off = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const CVector& k = grids[c].coeffs[idx[c]];
      std::copy(k.begin(), k.end(), u.begin() + static_cast<std::ptrdiff_t>(off));
      off += k.size();
      s += grids[c].norm_sq[idx[c]];
    }
    const double inv = 1.0 / std::sqrt(s);
    for (cplx& z : u) z *= inv;
    out.push_back(quadratic_form(op, u));
    if (!advance(idx, grids)) break;
  }
  return out;
}

}  // namespace

cplx berezin_symbol(const ComplexMatrix& op, const SpaceModel& space, const DomainPoint& lambda) {
  require_op_dim(op, space.dim());
  return quadratic_form(op, normalized_kernel(space, lambda));
}

cplx berezin_symbol(const ComplexMatrix& op, const DirectSumSpace& space,
                    std::span<const DomainPoint> lambdas) {
  require_op_dim(op, space.total_dim());
  return quadratic_form(op, direct_sum_kernel(space, lambdas));
}

BerezinEstimate berezin_number(const ComplexMatrix& op, const SpaceModel& space,
                               const SearchConfig& cfg) {
  require_op_dim(op, space.dim());
  return ProductSearch(std::span<const SpaceModel>(&space, 1), cfg, modulus_objective(op)).run();
}

BerezinEstimate berezin_number(const ComplexMatrix& op, const DirectSumSpace& space,
                               const SearchConfig& cfg) {
  require_op_dim(op, space.total_dim());
  return ProductSearch(space.components(), cfg, modulus_objective(op)).run();
}

std::vector<cplx> berezin_set_sample(const ComplexMatrix& op, const SpaceModel& space,
                                     std::size_t grid) {
  require_op_dim(op, space.dim());
  return sample(op, std::span<const SpaceModel>(&space, 1), grid);
}

std::vector<cplx> berezin_set_sample(const ComplexMatrix& op, const DirectSumSpace& space,
                                     std::size_t grid) {
  require_op_dim(op, space.total_dim());
  return sample(op, space.components(), grid);
}

namespace {
void require_euclid(std::span<const ComplexMatrix> ops, double p, std::size_t dim) {
  if (!(p >= 1.0)) throw Error(Errc::BadExponent, "p must be at least 1");
  if (ops.empty()) throw Error(Errc::InvalidArgument, "at least one operator is required");
  for (const ComplexMatrix& op : ops) require_op_dim(op, dim);
}
}  // namespace

BerezinEstimate euclid_berezin_number(std::span<const ComplexMatrix> ops, double p,
                                      const SpaceModel& space, const SearchConfig& cfg) {
  require_euclid(ops, p, space.dim());
  return ProductSearch(std::span<const SpaceModel>(&space, 1), cfg, euclid_objective(ops, p)).run();
}

BerezinEstimate euclid_berezin_number(std::span<const ComplexMatrix> ops, double p,
                                      const DirectSumSpace& space, const SearchConfig& cfg) {
  require_euclid(ops, p, space.total_dim());
  return ProductSearch(space.components(), cfg, euclid_objective(ops, p)).run();
}

}  // namespace berlab
