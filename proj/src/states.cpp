#include "athermal/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "athermal/errors.hpp"

namespace athermal {

HamiltonianSpec::HamiltonianSpec(std::vector<double> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw Error(ErrorCode::InvalidState, "Hamiltonian needs at least one level");
  for (double a : levels_)
    if (!std::isfinite(a)) throw Error(ErrorCode::InvalidState, "non-finite energy level");
  const double lo = *std::min_element(levels_.begin(), levels_.end());
  for (double& a : levels_) a -= lo;
}

double HamiltonianSpec::max_level() const {
  return *std::max_element(levels_.begin(), levels_.end());
}

double HamiltonianSpec::sum_levels() const {
  return std::accumulate(levels_.begin(), levels_.end(), 0.0);
}

ProbVector::ProbVector(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw Error(ErrorCode::InvalidState, "empty probability vector");
  double total = 0.0;
  for (double& x : w_) {
    if (!(x >= -1e-15)) throw Error(ErrorCode::InvalidState, "negative probability");
    x = std::max(x, 0.0);
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidState, "probabilities sum to " + std::to_string(total));
  }
}

ProbVector ProbVector::normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double x : weights) {
    if (!(x >= 0.0)) throw Error(ErrorCode::InvalidState, "negative weight");
    total += x;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidState, "weights have zero total");
  for (double& x : weights) x /= total;
  return ProbVector(std::move(weights));
}

ProbVector ProbVector::uniform(std::size_t m) {
  return ProbVector(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

ProbVector tensor(const ProbVector& a, const ProbVector& b) {
  std::vector<double> w;
  w.reserve(a.dim() * b.dim());
  for (double x : a.weights())
    for (double y : b.weights()) w.push_back(x * y);
  return ProbVector::normalized(std::move(w));
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.dim() == 0) throw Error(ErrorCode::InvalidState, "empty density matrix");
  if (!m_.is_hermitian(1e-9)) throw Error(ErrorCode::InvalidState, "density matrix not Hermitian");
  if (std::abs(m_.trace() - cplx(1.0)) > 1e-9) {
    throw Error(ErrorCode::InvalidState, "density matrix trace is not 1");
  }
  if (min_eigenvalue(m_) < -1e-9) throw Error(ErrorCode::InvalidState, "density matrix not PSD");
  m_ = m_.hermitian_part();
}

DensityMatrix DensityMatrix::diagonal(const ProbVector& p) {
  return DensityMatrix(ComplexMatrix::diagonal(p.weights()));
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> ket) {
  double norm2 = 0.0;
  for (const auto& z : ket) norm2 += std::norm(z);
  if (std::abs(norm2 - 1.0) > 1e-9) throw Error(ErrorCode::InvalidState, "ket is not normalised");
  return DensityMatrix(ComplexMatrix::outer(ket));
}

bool DensityMatrix::is_pure(double tol) const {
  double purity = 0.0;
  for (const auto& z : m_.entries()) purity += std::norm(z);
  return std::abs(purity - 1.0) <= tol;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

ProbVector gibbs_state(const HamiltonianSpec& h, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::InvalidState, "beta must be positive and finite");
  }
  // Levels are shifted to min 0, so the largest Boltzmann factor is exactly 1.
  std::vector<double> w(h.dim());
  for (std::size_t x = 0; x < h.dim(); ++x) w[x] = std::exp(-beta * h.level(x));
  return ProbVector::normalized(std::move(w));
}

AthermalityState::AthermalityState(DensityMatrix state, HamiltonianSpec hamiltonian, double beta)
    : state_(std::move(state)), h_(std::move(hamiltonian)), beta_(beta) {
  if (state_.dim() != h_.dim()) {
    throw Error(ErrorCode::DimMismatch, "state dim " + std::to_string(state_.dim()) +
                                            " vs Hamiltonian dim " + std::to_string(h_.dim()));
  }
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
    throw Error(ErrorCode::InvalidState, "beta must be positive and finite");
  }
}

GoldenUnit golden_unit(double m) {
  if (!(m > 1.0) || !std::isfinite(m)) {
    throw Error(ErrorCode::InvalidM, "golden unit needs m > 1, got " + std::to_string(m));
  }
  return GoldenUnit{ProbVector({1.0, 0.0}), ProbVector::normalized({1.0 / m, (m - 1.0) / m})};
}

HamiltonianSpec tensor(const HamiltonianSpec& a, const HamiltonianSpec& b) {
  std::vector<double> levels;
  levels.reserve(a.dim() * b.dim());
  for (double x : a.levels())
    for (double y : b.levels()) levels.push_back(x + y);
  return HamiltonianSpec(std::move(levels));
}

AthermalityState tensor(const AthermalityState& a, const AthermalityState& b) {
  if (a.beta() != b.beta()) throw Error(ErrorCode::BetaMismatch, "tensor of states at different beta");
  return AthermalityState(DensityMatrix(kron(a.state().matrix(), b.state().matrix())),
                          tensor(a.hamiltonian(), b.hamiltonian()), a.beta());
}

ProbVector diag_of(const DensityMatrix& rho) {
  auto d = rho.matrix().real_diagonal();
  for (double& x : d) x = std::max(x, 0.0);
  return ProbVector::normalized(std::move(d));
}

}  // namespace athermal
