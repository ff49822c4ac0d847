#include "berlab/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "berlab/error.hpp"

namespace berlab {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagRelTol = 1e-13;
constexpr double kHermitianRelTol = 1e-10;
constexpr double kClampRelTol = 1e-8;
constexpr int kMaxSquarings = 30;

void require_finite(std::span<const cplx> v) {
  for (const cplx& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(Errc::InvalidArgument, "matrix entry is not finite");
    }
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::ShapeMismatch, "matrix shapes differ");
  }
}

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw Error(Errc::ShapeMismatch, "empty matrix");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw Error(Errc::ShapeMismatch, "empty matrix");
  if (data_.size() != rows * cols) {
    throw Error(Errc::ShapeMismatch, "entry count does not match rows x cols");
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) throw Error(Errc::ShapeMismatch, "empty matrix");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(Errc::ShapeMismatch, "ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m.data_);
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  std::vector<cplx> d(diag.begin(), diag.end());
  return diagonal(std::span<const cplx>(d));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) noexcept {
  for (cplx& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::ShapeMismatch, "inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

CVector operator*(const ComplexMatrix& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) throw Error(Errc::ShapeMismatch, "vector length differs");
  CVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s{};
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw Error(Errc::ShapeMismatch, "vector lengths differ");
  cplx s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

double norm2(std::span<const cplx> x) {
  double s = 0.0;
  for (const cplx& z : x) s += std::norm(z);
  return std::sqrt(s);
}

cplx quadratic_form(const ComplexMatrix& a, std::span<const cplx> x) {
  if (!a.is_square() || a.cols() != x.size()) {
    throw Error(Errc::DimMismatch, "quadratic form dimension mismatch");
  }
  const std::size_t n = x.size();
  cplx s{};
  for (std::size_t i = 0; i < n; ++i) {
    cplx row{};
    for (std::size_t j = 0; j < n; ++j) row += a(i, j) * x[j];
    s += row * std::conj(x[i]);
  }
  return s;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
  }
  return r;
}

double frobenius_norm(const ComplexMatrix& a) { return norm2(a.entries()); }

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const cplx& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

HermEig herm_eig(const ComplexMatrix& input) {
  if (!input.is_square()) throw Error(Errc::NotHermitian, "matrix is not square");
  const std::size_t n = input.rows();
  const double scale = frobenius_norm(input);
  if (frobenius_norm(input - adjoint(input)) > kHermitianRelTol * std::max(1.0, scale)) {
    throw Error(Errc::NotHermitian, "matrix is not Hermitian");
  }

  // Work on the exact Hermitian part so the rotations see a consistent matrix.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = input(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (input(i, j) + std::conj(input(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = kOffDiagRelTol * scale;
  int sweep = 0;
  while (off_diagonal_mass(a) > target) {
    if (++sweep > kMaxSweeps) throw Error(Errc::NoConvergence, "Jacobi sweep cap exceeded");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq_abs = std::abs(a(p, q));
        if (apq_abs == 0.0) continue;
        const cplx phase = a(p, q) / apq_abs;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Real symmetric rotation on [[app, |apq|], [|apq|, aqq]].
        const double theta = (aqq - app) / (2.0 * apq_abs);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(1, e^{-i phi}) R restricted to (p, q).
        const cplx jpp = c;
        const cplx jpq = s;
        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // a <- a J
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // a <- J* a
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * apq_abs;
        a(q, q) = aqq + t * apq_abs;
        for (std::size_t k = 0; k < n; ++k) {  // v <- v J
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  HermEig out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

double operator_norm(const ComplexMatrix& a) {
  if (max_abs(a) == 0.0) return 0.0;
  const HermEig e = herm_eig(adjoint(a) * a);
  return std::sqrt(std::max(0.0, e.eigenvalues.back()));
}

ComplexMatrix abs_op(const ComplexMatrix& x) {
  return apply_fn(adjoint(x) * x, [](double t) { return std::sqrt(t); });
}

ComplexMatrix apply_fn(const ComplexMatrix& p, const ScalarFn& fn) {
  const HermEig e = herm_eig(p);
  const std::size_t n = p.rows();
  const double scale =
      std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
  std::vector<double> mapped(n);
  for (std::size_t i = 0; i < n; ++i) {
    double lam = e.eigenvalues[i];
    if (lam < 0.0) {
      if (lam < -kClampRelTol * scale) {
        throw Error(Errc::NegativeSpectrum, "matrix has a negative eigenvalue");
      }
      lam = 0.0;
    }
    mapped[i] = fn(lam);
  }
  const ComplexMatrix& v = e.eigenvectors;
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx s{};
      for (std::size_t k = 0; k < n; ++k) s += v(i, k) * mapped[k] * std::conj(v(j, k));
      out(i, j) = s;
      out(j, i) = std::conj(s);
    }
    out(i, i) = out(i, i).real();
  }
  return out;
}

double gelfand_spectral_radius(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) throw Error(Errc::ShapeMismatch, "spectral radius needs a square matrix");
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  // Below this, a renormalized square is treated as having collapsed to zero.
  constexpr double kUnderflowGuard = 1e-290;

  const double n0 = operator_norm(a);
  if (n0 == 0.0) return 0.0;
  ComplexMatrix b = (1.0 / n0) * a;
  double log_scale = std::log(n0);  // A^{2^m} = exp(log_scale) * b, ||b|| = 1
  double previous = n0;
  int stable = 0;
  double power = 1.0;
  for (int m = 1; m <= kMaxSquarings; ++m) {
    ComplexMatrix c = b * b;
    const double cn = operator_norm(c);
    if (cn < kUnderflowGuard) return 0.0;
    b = (1.0 / cn) * c;
    log_scale = 2.0 * log_scale + std::log(cn);
    power *= 2.0;
    const double estimate = std::exp(log_scale / power);
    if (std::abs(estimate - previous) <= 0.5 * tol * estimate) {
      if (++stable >= 2) return estimate;
    } else {
      stable = 0;
    }
    previous = estimate;
  }
  throw Error(Errc::NoConvergence, "Gelfand iteration did not stabilize");
}

}  // namespace berlab
