#pragma once

// Dense complex linear algebra used throughout the library: a row-major
// square matrix type, a cyclic Jacobi Hermitian eigensolver, PSD tests,
// trace distance and a handful of base-2 entropy helpers.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace athermal {

using cplx = std::complex<double>;

/// Default relative tolerance for positive-semidefiniteness checks.
inline constexpr double kPsdTol = 1e-9;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix outer(std::span<const cplx> ket);

  std::size_t dim() const noexcept { return dim_; }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cplx trace() const;
  double max_abs() const;
  double frobenius_norm() const;
  std::vector<double> real_diagonal() const;
  bool is_hermitian(double rel_tol = 1e-9) const;
  /// (M + M^dagger) / 2.
  ComplexMatrix hermitian_part() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// Row-major rectangular real matrix; used for stochastic maps and LP data.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static RealMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> apply(std::span<const double> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns
};

/// Cyclic Jacobi diagonalisation of a Hermitian matrix.
/// Throws Error(NotHermitian) when M deviates from M^dagger by more than
/// 1e-9 * maxabs(M).
EigenDecomposition eigh(const ComplexMatrix& m);

/// Eigenvalues only (same algorithm, eigenvector accumulation skipped).
std::vector<double> eigvalsh(const ComplexMatrix& m);

/// min eigenvalue >= -tol * max(1, max eigenvalue).
bool is_psd(const ComplexMatrix& m, double tol = kPsdTol);

double min_eigenvalue(const ComplexMatrix& m);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
ComplexMatrix project_psd(const ComplexMatrix& m);

/// V f(diag) V^dagger for a decomposition.
ComplexMatrix reconstruct(const EigenDecomposition& e, std::span<const double> values);

/// 1/2 * sum |eigenvalues(a - b)|.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// --- scalar helpers (base 2) ---------------------------------------------

/// x * log2(x) with the 0 log 0 = 0 convention; negative round-off -> 0.
double xlog2x(double x);

/// Shannon entropy in bits of a nonnegative weight vector.
double shannon_entropy(std::span<const double> w);

/// log2(sum_i 2^{v_i}); -inf entries are ignored.
double log2_sum_exp2(std::span<const double> values);

double log2_factorial(long long k);

}  // namespace athermal
