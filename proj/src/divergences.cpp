#include "athermal/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "athermal/errors.hpp"
#include "athermal/symmetry.hpp"

namespace athermal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassTol = 1e-12;

void check_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimMismatch, "dimensions " + std::to_string(a) + " and " + std::to_string(b));
  }
}

double f_plus(const ProbVector& p, const ProbVector& g, double t) {
  double s = 0.0;
  for (std::size_t x = 0; x < p.dim(); ++x) s += std::max(0.0, p[x] - t * g[x]);
  return s;
}

}  // namespace

DivergenceValue DivergenceValue::infinite() { return {kInf, true}; }

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto ev = eigvalsh(rho.matrix());
  return shannon_entropy(ev);
}

DivergenceValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& gamma) {
  check_same_dim(rho.dim(), gamma.dim());
  const EigenDecomposition eg = eigh(gamma.matrix());
  const auto& v = eg.eigenvectors;
  double cross = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    cplx mass = 0.0;
    for (std::size_t a = 0; a < rho.dim(); ++a)
      for (std::size_t b = 0; b < rho.dim(); ++b) mass += std::conj(v(a, i)) * rho(a, b) * v(b, i);
    const double w = mass.real();
    if (eg.eigenvalues[i] < kSupportTol) {
      if (w > kMassTol) return DivergenceValue::infinite();
      continue;
    }
    cross += w * std::log2(eg.eigenvalues[i]);
  }
  return {-von_neumann_entropy(rho) - cross, false};
}

DivergenceValue relative_entropy(const ProbVector& p, const ProbVector& g) {
  check_same_dim(p.dim(), g.dim());
  double d = 0.0;
  for (std::size_t x = 0; x < p.dim(); ++x) {
    if (p[x] <= 0.0) continue;
    if (g[x] < kSupportTol) return DivergenceValue::infinite();
    d += p[x] * (std::log2(p[x]) - std::log2(g[x]));
  }
  return {d, false};
}

double coherence(const DensityMatrix& rho, const HamiltonianSpec& h) {
  const double c = von_neumann_entropy(pinch(rho, h)) - von_neumann_entropy(rho);
  return std::max(c, 0.0);
}

double dmin_eps_classical(const ProbVector& p, const ProbVector& g, double eps) {
  check_same_dim(p.dim(), g.dim());
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::EpsOutOfRange, "eps must lie in [0, 1), got " + std::to_string(eps));
  }
  std::vector<std::size_t> idx;
  for (std::size_t x = 0; x < p.dim(); ++x)
    if (p[x] > 0.0) idx.push_back(x);
  // Descending likelihood ratio p/g, with g = 0 treated as +inf.
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return p[i] * g[j] > p[j] * g[i];
  });
  const double target = 1.0 - eps;
  double acc_p = 0.0, acc_g = 0.0;
  for (std::size_t x : idx) {
    if (acc_p + p[x] <= target) {
      acc_p += p[x];
      acc_g += g[x];
      continue;
    }
    acc_g += g[x] * (target - acc_p) / p[x];
    acc_p = target;
    break;
  }
  if (acc_g <= 0.0) return kInf;
  return -std::log2(acc_g) + 0.0;
}

DivergenceValue dmax(const DensityMatrix& rho, const DensityMatrix& gamma) {
  check_same_dim(rho.dim(), gamma.dim());
  const std::size_t m = rho.dim();
  const EigenDecomposition eg = eigh(gamma.matrix());
  std::vector<double> inv_sqrt(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (eg.eigenvalues[i] >= kSupportTol) inv_sqrt[i] = 1.0 / std::sqrt(eg.eigenvalues[i]);
  // rho in the eigenbasis of gamma.
  const auto& v = eg.eigenvectors;
  const ComplexMatrix r = v.adjoint() * rho.matrix() * v;
  for (std::size_t i = 0; i < m; ++i)
    if (inv_sqrt[i] == 0.0 && r(i, i).real() > kMassTol) return DivergenceValue::infinite();
  ComplexMatrix w(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) w(i, j) = inv_sqrt[i] * r(i, j) * inv_sqrt[j];
  const auto ev = eigvalsh(w.hermitian_part());
  return {std::log2(ev.back()), false};
}

DivergenceValue dmax(const ProbVector& p, const ProbVector& g) {
  check_same_dim(p.dim(), g.dim());
  double t = 0.0;
  for (std::size_t x = 0; x < p.dim(); ++x) {
    if (p[x] <= 0.0) continue;
    if (g[x] < kSupportTol) return DivergenceValue::infinite();
    t = std::max(t, p[x] / g[x]);
  }
  return {std::log2(t), false};
}

double dmax_eps_classical(const ProbVector& p, const ProbVector& g, double eps) {
  check_same_dim(p.dim(), g.dim());
  if (!(eps >= 0.0)) throw Error(ErrorCode::EpsOutOfRange, "eps must be nonnegative");
  if (eps == 0.0) return dmax(p, g).value;
  double off_support = 0.0, hi = 1.0;
  for (std::size_t x = 0; x < p.dim(); ++x) {
    if (g[x] < kSupportTol) {
      off_support += p[x];
    } else {
      hi = std::max(hi, p[x] / g[x]);
    }
  }
  if (off_support > eps) return kInf;
  double lo = 1.0;
  if (f_plus(p, g, lo) <= eps) return 0.0;
  // f_plus is continuous and non-increasing; f(lo) > eps >= f(hi).
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (f_plus(p, g, mid) <= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::log2(hi);
}

double distill_single_shot(const AthermalityState& state, double eps) {
  const auto [p, g] = joint_classical_spectrum(state.state(), state.hamiltonian(), state.gibbs());
  return dmin_eps_classical(p, g, eps);
}

double cost_single_shot_gpo(const AthermalityState& state, double eps) {
  if (eps == 0.0) return dmax(state.state(), state.gibbs_matrix()).value;
  if (!is_quasi_classical(state.state(), state.hamiltonian())) {
    throw Error(ErrorCode::UnsupportedSmoothing,
                "smoothed D_max is only available for quasi-classical states");
  }
  const auto [p, g] = joint_classical_spectrum(state.state(), state.hamiltonian(), state.gibbs());
  return dmax_eps_classical(p, g, eps);
}

}  // namespace athermal
