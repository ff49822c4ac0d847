#include <gtest/gtest.h>

#include <cmath>

#include "berlab/berezin.hpp"
#include "berlab/error.hpp"
#include "berlab/harness.hpp"
#include "berlab/radii.hpp"
#include "oracles.hpp"

using namespace berlab;

namespace {

ComplexMatrix karaev(std::size_t n) {
  ComplexMatrix a(n, n);
  a(1, 1) = 1.0;
  return a;
}

// Frozen from the 1-D brute force t(1 - t)/(1 - t^N), 10^6-point grid.
constexpr double kKaraev2 = 0.5;
constexpr double kKaraev4 = 0.2769531794372302;
constexpr double kKaraev64 = 0.25;

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no berlab::Error thrown";
  return Errc::InvalidArgument;
}

SearchConfig small() {
  SearchConfig cfg;
  cfg.radial = 24;
  cfg.angular = 48;
  return cfg;
}

}  // namespace

TEST(BerezinSymbol, Examples) {
  const SpaceModel h8 = SpaceModel::hardy(8);
  EXPECT_NEAR(std::abs(berezin_symbol(ComplexMatrix::identity(8), h8, DomainPoint::disk({0.3, 0.6})) - 1.0),
              0.0, 1e-15);
  for (double t : {0.1, 0.5, 0.9}) {
    double s = 0.0;
    for (int n = 0; n < 64; ++n) s += std::pow(t, 2 * n);
    const cplx v = berezin_symbol(karaev(64), SpaceModel::hardy(64), DomainPoint::disk(t));
    EXPECT_NEAR(v.real(), t * t / s, 1e-14);
    EXPECT_NEAR(v.real(), t * t * (1 - t * t), 1e-3);
  }
  const cplx d = berezin_symbol(ComplexMatrix::diagonal(std::vector<double>{1.0, 2.0}), SpaceModel::hardy(2),
                                DomainPoint::disk(0.0));
  EXPECT_EQ(d, cplx(1.0));
}

TEST(BerezinSymbol, DimMismatch) {
  EXPECT_EQ(code_of([] { berezin_symbol(ComplexMatrix::identity(3), SpaceModel::hardy(2), DomainPoint::disk(0.0)); }),
            Errc::DimMismatch);
  EXPECT_EQ(code_of([] { berezin_number(ComplexMatrix::identity(3), SpaceModel::hardy(2)); }), Errc::DimMismatch);
}

TEST(BerezinNumber, IdentityAndKaraevLadder) {
  EXPECT_NEAR(berezin_number(ComplexMatrix::identity(5), SpaceModel::bergman(5)).value, 1.0, 1e-9);
  EXPECT_NEAR(oracle::karaev_max(4), kKaraev4, 1e-15);
  EXPECT_NEAR(berezin_number(karaev(2), SpaceModel::hardy(2)).value, kKaraev2, 1e-9);
  EXPECT_NEAR(berezin_number(karaev(4), SpaceModel::hardy(4)).value, kKaraev4, 1e-6);
  EXPECT_NEAR(berezin_number(karaev(64), SpaceModel::hardy(64)).value, kKaraev64, 1e-6);
}

TEST(BerezinNumber, EstimateIsAttainedAtArgmax) {
  oracle::Gauss g(21);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix a = g.matrix(4, 4);
    const SpaceModel s = SpaceModel::bergman(4);
    const BerezinEstimate e = berezin_number(a, s, small());
    ASSERT_EQ(e.argmax.size(), 1u);
    EXPECT_NEAR(e.value, std::abs(berezin_symbol(a, s, e.argmax[0])), 1e-12);
    EXPECT_GE(e.value, e.coarse_value);
    EXPECT_TRUE(e.lower_estimate);
  }
}

TEST(BerezinNumber, AgreesWithDenseGridOracle) {
  oracle::Gauss g(22);
  for (int k = 0; k < 10; ++k) {
    const bool bergman = k % 2 == 1;
    const ComplexMatrix a = g.matrix(3, 3);
    const SpaceModel s = bergman ? SpaceModel::bergman(3) : SpaceModel::hardy(3);
    const double grid = oracle::disk_grid_ber(a, bergman, 400, 800);
    const double est = berezin_number(a, s).value;
    EXPECT_GE(est, grid - 1e-9);           // refinement beats a dense grid
    EXPECT_LE(est, grid * (1 + 1e-3));     // and is not far above it
  }
}

TEST(BerezinNumber, FiniteSetMatchesExhaustiveEnumeration) {
  oracle::Gauss g(23);
  for (int k = 0; k < 30; ++k) {
    const std::size_t pts = 1 + k % 12, dim = 1 + k % 7;
    std::vector<CVector> feats;
    for (std::size_t i = 0; i < pts; ++i) feats.push_back(g.vector(dim));
    const SpaceModel s = SpaceModel::finite_set({}, feats);
    const ComplexMatrix a = g.matrix(dim, dim);
    EXPECT_NEAR(berezin_number(a, s).value, oracle::finite_set_ber(a, feats), 1e-12);
  }
}

TEST(BerezinNumber, DirectSumMatchesKnownValues) {
  const SpaceModel h4 = SpaceModel::hardy(4);
  const DirectSumSpace s({h4, h4});
  ComplexMatrix corner(8, 8);
  for (int i = 0; i < 4; ++i) corner(i, i) = 1.0;
  EXPECT_NEAR(berezin_number(corner, s).value, 0.8, 1e-9);  // N / (N + 1)
  ComplexMatrix swap(8, 8);
  for (int i = 0; i < 4; ++i) swap(i, i + 4) = swap(i + 4, i) = 1.0;
  EXPECT_NEAR(berezin_number(swap, s).value, 1.0, 1e-9);
}

TEST(BerezinNumber, DeterministicForFixedConfig) {
  const ComplexMatrix a = gen_matrix(5, 6, 6);
  const DirectSumSpace s({SpaceModel::hardy(3), SpaceModel::bergman(3)});
  const BerezinEstimate x = berezin_number(a, s, small());
  const BerezinEstimate y = berezin_number(a, s, small());
  EXPECT_EQ(x.value, y.value);
  EXPECT_EQ(x.argmax, y.argmax);
}

TEST(BerezinSetSample, Examples) {
  for (const cplx& v : berezin_set_sample(ComplexMatrix::identity(3), SpaceModel::hardy(3), 16)) {
    EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-14);
  }
  for (const cplx& v : berezin_set_sample(karaev(64), SpaceModel::hardy(64), 64)) {
    EXPECT_GE(v.real(), -1e-12);
    EXPECT_LE(v.real(), 0.2501);
  }
  oracle::Gauss g(24);
  const ComplexMatrix h = g.hermitian(5);
  const double w = numerical_radius(h).value;
  for (const cplx& v : berezin_set_sample(h, SpaceModel::bergman(5), 32)) {
    EXPECT_LE(std::abs(v.imag()), 1e-10);
    EXPECT_LE(std::abs(v), w + 1e-8);
  }
}

TEST(EuclidBerezin, Examples) {
  const SpaceModel s = SpaceModel::hardy(3);
  const std::vector<ComplexMatrix> ii{ComplexMatrix::identity(3), ComplexMatrix::identity(3)};
  EXPECT_NEAR(euclid_berezin_number(ii, 2.0, s).value, std::sqrt(2.0), 1e-9);
  const std::vector<ComplexMatrix> i0{ComplexMatrix::identity(3), ComplexMatrix(3, 3)};
  EXPECT_NEAR(euclid_berezin_number(i0, 1.0, s).value, 1.0, 1e-9);
  const ComplexMatrix a = gen_matrix(7, 3, 3);
  const std::vector<ComplexMatrix> one{a};
  for (double p : {1.0, 2.5}) {
    EXPECT_NEAR(euclid_berezin_number(one, p, s).value, berezin_number(a, s).value, 1e-9);
  }
  EXPECT_EQ(code_of([&] { euclid_berezin_number(ii, 0.5, s); }), Errc::BadExponent);
}

TEST(BerezinProperties, Homogeneity) {
  oracle::Gauss g(25);
  const SpaceModel s = SpaceModel::hardy(4);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix a = g.matrix(4, 4);
    const cplx alpha = g.c();
    ComplexMatrix b = a;
    b *= alpha;
    const double ba = berezin_number(a, s, small()).value;
    EXPECT_NEAR(berezin_number(b, s, small()).value, std::abs(alpha) * ba, 1e-9 * std::abs(alpha) * ba);
    const std::vector<ComplexMatrix> t1{a, g.matrix(4, 4)};
    std::vector<ComplexMatrix> t2 = t1;
    for (ComplexMatrix& m : t2) m *= alpha;
    const double e1 = euclid_berezin_number(t1, 2.0, s, small()).value;
    EXPECT_NEAR(euclid_berezin_number(t2, 2.0, s, small()).value, std::abs(alpha) * e1,
                1e-9 * std::abs(alpha) * e1);
  }
}

TEST(BerezinProperties, Subadditivity) {
  const SpaceModel s = SpaceModel::bergman(3);
  for (std::uint64_t k = 0; k < 200; ++k) {
    const ComplexMatrix a = gen_matrix(2 * k, 3, 3);
    const ComplexMatrix b = gen_matrix(2 * k + 1, 3, 3);
    EXPECT_LE(berezin_number(a + b, s, small()).value,
              berezin_number(a, s, small()).value + berezin_number(b, s, small()).value + 1e-7);
    if (k % 10 == 0) {
      const std::vector<ComplexMatrix> ta{a, b}, tb{b, a}, tsum{a + b, b + a};
      EXPECT_LE(euclid_berezin_number(tsum, 1.5, s, small()).value,
                euclid_berezin_number(ta, 1.5, s, small()).value +
                    euclid_berezin_number(tb, 1.5, s, small()).value + 1e-7);
    }
  }
}

TEST(BerezinProperties, SandwichOnSeededOperators) {
  for (std::uint64_t k = 0; k < 500; ++k) {
    const SpaceModel s = gen_space(k);
    InstanceSpec spec;
    spec.seed = k;
    spec.dim = s.dim();
    spec.kind = static_cast<OperatorKind>(k % 5);
    const ComplexMatrix a = gen_operator(spec);
    SearchConfig cfg;
    cfg.radial = 16;
    cfg.angular = 32;
    cfg.refine_iterations = 20;
    const double ber = berezin_number(a, s, cfg).value;
    const double w = numerical_radius(a).value;
    EXPECT_LE(ber, w + 1e-7);
    EXPECT_LE(w, operator_norm(a) + 1e-7);
  }
}
