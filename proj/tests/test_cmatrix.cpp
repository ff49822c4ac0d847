#include <gtest/gtest.h>

#include <cmath>

#include "berlab/cmatrix.hpp"
#include "berlab/error.hpp"
#include "oracles.hpp"

using namespace berlab;

namespace {

const cplx I{0.0, 1.0};

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no berlab::Error thrown";
  return Errc::InvalidArgument;
}

double reconstruction_residual(const ComplexMatrix& a, const HermEig& e) {
  ComplexMatrix d = ComplexMatrix::diagonal(std::span<const double>(e.eigenvalues));
  return frobenius_norm(e.eigenvectors * d * adjoint(e.eigenvectors) - a);
}

}  // namespace

TEST(ComplexMatrix, RejectsEmptyAndNonFinite) {
  EXPECT_EQ(code_of([] { ComplexMatrix(0, 2); }), Errc::ShapeMismatch);
  EXPECT_EQ(code_of([] { ComplexMatrix(1, 1, {cplx{NAN, 0.0}}); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { ComplexMatrix(2, 2, {1.0, 2.0}); }), Errc::ShapeMismatch);
}

TEST(ComplexMatrix, AdjointExamples) {
  EXPECT_EQ(adjoint(ComplexMatrix{{I}}), (ComplexMatrix{{-I}}));
  EXPECT_EQ(adjoint(ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}), (ComplexMatrix{{0.0, 0.0}, {2.0, 0.0}}));
  EXPECT_EQ(adjoint(ComplexMatrix{{1.0, 1.0 + I}, {0.0, 2.0}}),
            (ComplexMatrix{{1.0, 0.0}, {1.0 - I, 2.0}}));
}

TEST(ComplexMatrix, AdjointOfProductReverses) {
  oracle::Gauss g(1);
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix a = g.matrix(3, 5);
    const ComplexMatrix b = g.matrix(5, 4);
    const ComplexMatrix a2 = adjoint(adjoint(a));
    EXPECT_EQ(a2, a);
    EXPECT_LE(oracle::max_abs_diff(adjoint(a * b), adjoint(b) * adjoint(a)), 1e-12);
  }
}

TEST(HermEig, Examples) {
  const HermEig d = herm_eig(ComplexMatrix::diagonal(std::vector<double>{2.0, 1.0}));
  EXPECT_NEAR(d.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(d.eigenvalues[1], 2.0, 1e-14);
  const HermEig s = herm_eig(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}});
  EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-14);
  const HermEig c = herm_eig(ComplexMatrix{{2.0, I}, {-I, 2.0}});
  EXPECT_NEAR(c.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(c.eigenvalues[1], 3.0, 1e-14);
}

TEST(HermEig, RejectsNonHermitian) {
  EXPECT_EQ(code_of([] { herm_eig(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}); }), Errc::NotHermitian);
  EXPECT_EQ(code_of([] { herm_eig(ComplexMatrix(2, 3)); }), Errc::NotHermitian);
}

TEST(HermEig, MatchesClosedFormOn2x2) {
  oracle::Gauss g(2);
  for (int k = 0; k < 200; ++k) {
    const double a = g(), d = g();
    const cplx b = g.c();
    const HermEig e = herm_eig(ComplexMatrix{{a, b}, {std::conj(b), d}});
    const auto [lo, hi] = oracle::eig2(a, b, d);
    EXPECT_NEAR(e.eigenvalues[0], lo, 1e-12);
    EXPECT_NEAR(e.eigenvalues[1], hi, 1e-12);
  }
}

TEST(HermEig, ResidualsOnRandomHermitian) {
  oracle::Gauss g(3);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + k % 16;
    const ComplexMatrix a = g.hermitian(n);
    const HermEig e = herm_eig(a);
    const double scale = std::max(1.0, operator_norm(a));
    EXPECT_LE(reconstruction_residual(a, e), 1e-10 * scale);
    EXPECT_LE(frobenius_norm(adjoint(e.eigenvectors) * e.eigenvectors - ComplexMatrix::identity(n)),
              1e-10);
    EXPECT_TRUE(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
  }
}

TEST(OperatorNorm, Examples) {
  EXPECT_NEAR(operator_norm(ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}), 2.0, 1e-14);
  EXPECT_NEAR(operator_norm(ComplexMatrix::identity(5)), 1.0, 1e-14);
  EXPECT_NEAR(operator_norm(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), std::sqrt((3 + std::sqrt(5.0)) / 2),
              1e-13);
}

TEST(OperatorNorm, EqualsLargestEigenvalueModulusForHermitian) {
  oracle::Gauss g(4);
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix a = g.hermitian(6);
    const HermEig e = herm_eig(a);
    EXPECT_NEAR(operator_norm(a),
                std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back())), 1e-10);
  }
}

TEST(AbsOp, Examples) {
  const ComplexMatrix x{{0.0, 2.0}, {0.0, 0.0}};
  EXPECT_LE(oracle::max_abs_diff(abs_op(x), ComplexMatrix::diagonal(std::vector<double>{0.0, 2.0})), 1e-12);
  EXPECT_LE(oracle::max_abs_diff(abs_op(ComplexMatrix::diagonal(std::vector<double>{-3.0, 4.0})),
                                 ComplexMatrix::diagonal(std::vector<double>{3.0, 4.0})),
            1e-12);
  EXPECT_LE(oracle::max_abs_diff(abs_op(adjoint(x)), ComplexMatrix::diagonal(std::vector<double>{2.0, 0.0})),
            1e-12);
}

TEST(AbsOp, SquaresToGramAndMatchesSingularValues) {
  oracle::Gauss g(5);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 8;
    const ComplexMatrix x = g.matrix(n, n);
    const ComplexMatrix p = abs_op(x);
    EXPECT_LE(frobenius_norm(p * p - adjoint(x) * x), 1e-9 * std::max(1.0, frobenius_norm(x) * frobenius_norm(x)));
    EXPECT_LE(frobenius_norm(p - adjoint(p)), 1e-12);
    if (n == 2) {
      // singular values from the closed-form eigenvalues of x* x
      const ComplexMatrix gram = adjoint(x) * x;
      const auto [lo, hi] = oracle::eig2(gram(0, 0).real(), gram(0, 1), gram(1, 1).real());
      const HermEig e = herm_eig(p);
      EXPECT_NEAR(e.eigenvalues[0], std::sqrt(std::max(0.0, lo)), 1e-8);
      EXPECT_NEAR(e.eigenvalues[1], std::sqrt(hi), 1e-8);
    }
  }
}

TEST(ApplyFn, Examples) {
  const auto sqrt_fn = [](double t) { return std::sqrt(t); };
  EXPECT_LE(oracle::max_abs_diff(apply_fn(ComplexMatrix::diagonal(std::vector<double>{4.0, 9.0}), sqrt_fn),
                                 ComplexMatrix::diagonal(std::vector<double>{2.0, 3.0})),
            1e-14);
  const ComplexMatrix p{{2.0, 1.0}, {1.0, 2.0}};
  EXPECT_LE(oracle::max_abs_diff(apply_fn(p, [](double t) { return t; }), p), 1e-10);
  const double s3 = std::sqrt(3.0);
  const ComplexMatrix expected{{0.5 * (s3 + 1), 0.5 * (s3 - 1)}, {0.5 * (s3 - 1), 0.5 * (s3 + 1)}};
  EXPECT_LE(oracle::max_abs_diff(apply_fn(p, sqrt_fn), expected), 1e-12);
}

TEST(ApplyFn, NegativeSpectrumIsAnErrorBeyondTheClampThreshold) {
  const auto id = [](double t) { return t; };
  EXPECT_EQ(code_of([&] { apply_fn(ComplexMatrix::diagonal(std::vector<double>{1.0, -0.5}), id); }),
            Errc::NegativeSpectrum);
  // tiny negative eigenvalue is clamped to zero
  const ComplexMatrix r = apply_fn(ComplexMatrix::diagonal(std::vector<double>{1.0, -1e-12}), id);
  EXPECT_EQ(r(1, 1), cplx{});
  EXPECT_EQ(code_of([&] { apply_fn(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, id); }), Errc::NotHermitian);
}

TEST(ApplyFn, SpectralMappingAndCommutation) {
  oracle::Gauss g(6);
  const auto fn = [](double t) { return std::pow(t, 0.7) + t; };
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 10;
    const ComplexMatrix x = g.matrix(n, n);
    const ComplexMatrix p = adjoint(x) * x;
    const ComplexMatrix q = apply_fn(p, fn);
    const HermEig ep = herm_eig(p);
    const HermEig eq = herm_eig(q);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(eq.eigenvalues[i], fn(std::max(0.0, ep.eigenvalues[i])), 1e-9 * std::max(1.0, eq.eigenvalues.back()));
    }
    EXPECT_LE(frobenius_norm(p * q - q * p), 1e-9 * std::max(1.0, frobenius_norm(p) * frobenius_norm(q)));
  }
}

TEST(Gelfand, Examples) {
  const double tol = 1e-6;
  EXPECT_NEAR(gelfand_spectral_radius(ComplexMatrix::diagonal(std::vector<double>{2.0, 0.5}), tol), 2.0, 2.0 * tol);
  EXPECT_EQ(gelfand_spectral_radius(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, tol), 0.0);
  EXPECT_NEAR(gelfand_spectral_radius(ComplexMatrix{{0.0, 2.0}, {0.5, 0.0}}, tol), 1.0, tol);
  EXPECT_EQ(gelfand_spectral_radius(ComplexMatrix(3, 3), tol), 0.0);
}

TEST(Gelfand, NeverExceedsNorm) {
  oracle::Gauss g(7);
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix a = g.matrix(1 + k % 8, 1 + k % 8);
    EXPECT_LE(gelfand_spectral_radius(a, 1e-3), operator_norm(a) * (1 + 1e-3));
  }
}

TEST(Gelfand, RejectsBadInput) {
  EXPECT_EQ(code_of([] { gelfand_spectral_radius(ComplexMatrix(2, 3), 1e-3); }), Errc::ShapeMismatch);
  EXPECT_EQ(code_of([] { gelfand_spectral_radius(ComplexMatrix::identity(2), 0.0); }), Errc::InvalidArgument);
}
