#include "athermal/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "athermal/errors.hpp"

namespace athermal {

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw Error(ErrorCode::DimMismatch, "matrix of dim " + std::to_string(dim_) + " needs " +
                                            std::to_string(dim_ * dim_) + " entries, got " +
                                            std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> ket) {
  ComplexMatrix m(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

std::vector<double> ComplexMatrix::real_diagonal() const {
  std::vector<double> d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = (*this)(i, i).real();
  return d;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
  const double tol = rel_tol * max_abs();
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      r(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
  return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw Error(ErrorCode::DimMismatch, "matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw Error(ErrorCode::DimMismatch, "matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "matrix product");
  const std::size_t n = a.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> RealMatrix::apply(std::span<const double> v) const {
  if (v.size() != cols_) throw Error(ErrorCode::DimMismatch, "RealMatrix::apply");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix r(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return r;
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagRelTol = 1e-12;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

EigenDecomposition jacobi(const ComplexMatrix& input, bool want_vectors) {
  const std::size_t n = input.dim();
  if (n == 0) throw Error(ErrorCode::DimMismatch, "eigh on empty matrix");
  const double scale = input.max_abs();
  if (!input.is_hermitian(1e-9)) {
    throw Error(ErrorCode::NotHermitian, "eigh input deviates from its adjoint");
  }
  ComplexMatrix a = input.hermitian_part();
  ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix();
  const double target = kOffDiagRelTol * a.frobenius_norm();

  for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
    if (off_diagonal_norm(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= std::numeric_limits<double>::min()) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx phase = apq / mag;
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const cplx gpp = c, gpq = s;
        const cplx gqp = -s * std::conj(phase), gqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A G
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- G^dagger A
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p), vkq = v(k, q);
            v(k, p) = vkp * gpp + vkq * gqp;
            v(k, q) = vkp * gpq + vkq * gqq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.eigenvalues[k] = a(order[k], order[k]).real();
  if (want_vectors) {
    out.eigenvectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace

EigenDecomposition eigh(const ComplexMatrix& m) { return jacobi(m, true); }

std::vector<double> eigvalsh(const ComplexMatrix& m) { return jacobi(m, false).eigenvalues; }

double min_eigenvalue(const ComplexMatrix& m) { return eigvalsh(m).front(); }

bool is_psd(const ComplexMatrix& m, double tol) {
  const auto ev = eigvalsh(m);
  return ev.front() >= -tol * std::max(1.0, ev.back());
}

ComplexMatrix reconstruct(const EigenDecomposition& e, std::span<const double> values) {
  const std::size_t n = e.eigenvectors.dim();
  ComplexMatrix r(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (values[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = e.eigenvectors(i, k) * values[k];
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(e.eigenvectors(j, k));
    }
  }
  return r;
}

ComplexMatrix project_psd(const ComplexMatrix& m) {
  auto e = eigh(m);
  std::vector<double> clipped(e.eigenvalues.size());
  std::transform(e.eigenvalues.begin(), e.eigenvalues.end(), clipped.begin(),
                 [](double x) { return std::max(x, 0.0); });
  return reconstruct(e, clipped);
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "trace_distance");
  const auto ev = eigvalsh(a - b);
  double s = 0.0;
  for (double x : ev) s += std::abs(x);
  return 0.5 * s;
}

double xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

double shannon_entropy(std::span<const double> w) {
  double h = 0.0;
  for (double x : w) h -= xlog2x(x);
  return h;
}

double log2_sum_exp2(std::span<const double> values) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : values) mx = std::max(mx, v);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double v : values)
    if (std::isfinite(v)) s += std::exp2(v - mx);
  return mx + std::log2(s);
}

double log2_factorial(long long k) {
  return std::lgamma(static_cast<double>(k) + 1.0) / std::numbers::ln2;
}

}  // namespace athermal
