#include <gtest/gtest.h>

#include <cmath>

#include "berlab/error.hpp"
#include "berlab/harness.hpp"
#include "berlab/opmatrix.hpp"
#include "berlab/radii.hpp"
#include "oracles.hpp"

using namespace berlab;

namespace {

const SpaceModel kOne = SpaceModel::finite_set({}, {CVector{1.0}});

ComplexMatrix scalar(cplx v) { return ComplexMatrix{{v}}; }

DirectSumSpace hardy2x2() { return DirectSumSpace({SpaceModel::hardy(2), SpaceModel::hardy(2)}); }

}  // namespace

TEST(Assemble, Examples) {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const BlockOperator t = assemble({{i2, i2}, {i2, i2}}, hardy2x2());
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(t.flat()(r, c), cplx(r % 2 == c % 2 ? 1.0 : 0.0));

  const BlockOperator s = assemble({{scalar(1), scalar(2)}, {scalar(3), scalar(4)}}, DirectSumSpace({kOne, kOne}));
  EXPECT_EQ(s.flat(), (ComplexMatrix{{1.0, 2.0}, {3.0, 4.0}}));
}

TEST(Assemble, ShapeErrors) {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  try {
    assemble({{i2, i2}}, hardy2x2());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ShapeMismatch);
  }
  try {
    assemble({{i2, ComplexMatrix(2, 3)}, {i2, i2}}, hardy2x2());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ShapeMismatch);
  }
}

TEST(OffDiag, Examples) {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const BlockOperator swap = off_diag(i2, i2, hardy2x2());
  EXPECT_EQ(swap.flat()(0, 2), cplx(1.0));
  EXPECT_EQ(swap.flat()(2, 0), cplx(1.0));
  EXPECT_EQ(swap.flat()(0, 0), cplx(0.0));
  EXPECT_EQ(off_diag(ComplexMatrix(2, 2), ComplexMatrix(2, 2), hardy2x2()).flat(), ComplexMatrix(4, 4));
  const ComplexMatrix x{{0.0, 2.0}, {0.0, 0.0}};
  const BlockOperator t = off_diag(x, i2, hardy2x2());
  const ComplexMatrix hand{{0, 0, 0, 2}, {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}};
  EXPECT_EQ(t.flat(), hand);
  // rectangular off-diagonal blocks over unequal components
  const DirectSumSpace uneq({SpaceModel::hardy(2), SpaceModel::hardy(3)});
  EXPECT_NO_THROW(off_diag(ComplexMatrix(2, 3), ComplexMatrix(3, 2), uneq));
}

TEST(EmbedCorner, Examples) {
  const BlockOperator e = embed_corner(ComplexMatrix::identity(2), hardy2x2());
  EXPECT_EQ(e.flat(), ComplexMatrix::diagonal(std::vector<double>{1, 1, 0, 0}));
  EXPECT_EQ(embed_corner(ComplexMatrix(2, 2), hardy2x2()).flat(), ComplexMatrix(4, 4));
  ComplexMatrix k(2, 2);
  k(1, 1) = 1.0;
  const BlockOperator ek = embed_corner(k, hardy2x2());
  double total = 0.0;
  for (const cplx& v : ek.flat().entries()) total += std::abs(v);
  EXPECT_EQ(total, 1.0);
  EXPECT_EQ(ek.flat()(1, 1), cplx(1.0));
}

TEST(Compress, Examples) {
  const BlockOperator s = assemble({{scalar(1), scalar(2)}, {scalar(3), scalar(4)}}, DirectSumSpace({kOne, kOne}));
  EXPECT_LE(oracle::max_abs_diff(compress(s, CompressionMode::BerDiag).matrix, ComplexMatrix{{1, 2}, {3, 4}}), 1e-12);
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const BlockOperator ones = assemble({{i2, i2}, {i2, i2}}, hardy2x2());
  EXPECT_LE(oracle::max_abs_diff(compress(ones, CompressionMode::HouNorm).matrix, ComplexMatrix{{1, 1}, {1, 1}}),
            1e-12);
  const BlockOperator z = off_diag(ComplexMatrix(2, 2), ComplexMatrix(2, 2), hardy2x2());
  for (CompressionMode m : {CompressionMode::HouNorm, CompressionMode::BerDiag}) {
    EXPECT_EQ(compress(z, m).matrix, ComplexMatrix(2, 2));
  }
}

TEST(OpMatrixProperties, RoundTripIsBitExact) {
  for (std::uint64_t k = 0; k < 50; ++k) {
    const DirectSumSpace s({gen_space(3 * k), gen_space(3 * k + 1), gen_space(3 * k + 2)});
    BlockOperator::Grid g(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        g[i].push_back(gen_matrix(100 * k + 3 * i + j, s.component(i).dim(), s.component(j).dim()));
    const BlockOperator t = assemble(g, s);
    EXPECT_EQ(t.disassemble(), g);
  }
}

TEST(OpMatrixProperties, HouNormIsPhaseInvariant) {
  oracle::Gauss g(41);
  for (std::uint64_t k = 0; k < 30; ++k) {
    const DirectSumSpace s({gen_space(2 * k), gen_space(2 * k + 1)});
    BlockOperator::Grid grid(2), turned(2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        ComplexMatrix b = gen_matrix(10 * k + 2 * i + j, s.component(i).dim(), s.component(j).dim());
        grid[i].push_back(b);
        b *= std::polar(1.0, 6.0 * g());
        turned[i].push_back(b);
      }
    const ComplexMatrix a = compress(assemble(grid, s), CompressionMode::HouNorm).matrix;
    const ComplexMatrix b = compress(assemble(turned, s), CompressionMode::HouNorm).matrix;
    EXPECT_LE(oracle::max_abs_diff(a, b), 1e-12);
  }
}

TEST(OpMatrixProperties, HouChain) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 2;
    std::vector<SpaceModel> parts;
    for (std::size_t i = 0; i < n; ++i) parts.push_back(gen_space(7 * k + i));
    const DirectSumSpace s(parts);
    BlockOperator::Grid grid(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        grid[i].push_back(gen_matrix(1000 + 10 * k + 3 * i + j, s.component(i).dim(), s.component(j).dim()));
    const BlockOperator t = assemble(grid, s);
    const ComplexMatrix c = compress(t, CompressionMode::HouNorm).matrix;
    EXPECT_LE(gelfand_spectral_radius(t.flat(), 1e-4), gelfand_spectral_radius(c, 1e-4) + 1e-3);
    EXPECT_LE(numerical_radius(t.flat()).value, numerical_radius(c).value + 1e-6);
    EXPECT_LE(operator_norm(t.flat()), operator_norm(c) + 1e-8);
  }
}
