#pragma once

// Dense complex matrices and the small amount of spectral machinery the
// rest of the library needs: a cyclic Jacobi eigensolver for Hermitian
// input, operator norms, |X| = (X*X)^{1/2}, functional calculus on PSD
// matrices and a Gelfand-formula spectral radius.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace berlab {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

class ComplexMatrix {
 public:
  /// Zero matrix. Both dimensions must be at least one.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws if the size is wrong or an entry is not finite.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s) noexcept;

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
CVector operator*(const ComplexMatrix& a, std::span<const cplx> x);

/// <x, y> = sum_i x_i conj(y_i), linear in the first argument.
cplx inner(std::span<const cplx> x, std::span<const cplx> y);
double norm2(std::span<const cplx> x);
/// <a x, x>
cplx quadratic_form(const ComplexMatrix& a, std::span<const cplx> x);

ComplexMatrix adjoint(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
/// Largest entry modulus; zero only for the zero matrix.
double max_abs(const ComplexMatrix& a);

struct HermEig {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, unitary
};

/// Cyclic complex Jacobi. Throws NotHermitian / NoConvergence.
HermEig herm_eig(const ComplexMatrix& a);

/// Largest singular value, sqrt(lambda_max(a* a)).
double operator_norm(const ComplexMatrix& a);

/// (x* x)^{1/2}. Rectangular x is accepted; the result is cols x cols.
ComplexMatrix abs_op(const ComplexMatrix& x);

using ScalarFn = std::function<double(double)>;

/// V diag(fn(lambda)) V* for Hermitian PSD p. Eigenvalues in
/// [-1e-8 ||p||, 0) are clamped to zero, anything lower is NegativeSpectrum.
ComplexMatrix apply_fn(const ComplexMatrix& p, const ScalarFn& fn);

/// Gelfand limit ||A^{2^m}||^{2^{-m}} by renormalized repeated squaring.
double gelfand_spectral_radius(const ComplexMatrix& a, double tol);

}  // namespace berlab
