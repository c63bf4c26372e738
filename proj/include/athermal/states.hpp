#pragma once

// Hamiltonians, probability vectors, density matrices and athermality pairs.

#include <span>
#include <vector>

#include "athermal/linalg.hpp"

namespace athermal {

/// Energy levels of a finite-dimensional system, stored shifted so that the
/// lowest level is 0. Repeated levels (degeneracies) are allowed.
class HamiltonianSpec {
 public:
  explicit HamiltonianSpec(std::vector<double> levels);

  std::size_t dim() const noexcept { return levels_.size(); }
  std::span<const double> levels() const noexcept { return levels_; }
  double level(std::size_t x) const { return levels_[x]; }
  double max_level() const;
  double sum_levels() const;
  /// Absolute tolerance under which two energies (or energy differences) are
  /// treated as equal: rel * (1 + max |level|).
  double energy_tolerance(double rel = 1e-9) const { return rel * (1.0 + max_level()); }

 private:
  std::vector<double> levels_;
};

class ProbVector {
 public:
  /// Validates nonnegativity and unit sum (within 1e-12).
  explicit ProbVector(std::vector<double> weights);
  /// Rescales a nonnegative vector with positive total to unit sum.
  static ProbVector normalized(std::vector<double> weights);
  static ProbVector uniform(std::size_t m);

  std::size_t dim() const noexcept { return w_.size(); }
  std::span<const double> weights() const noexcept { return w_; }
  double operator[](std::size_t i) const { return w_[i]; }

 private:
  std::vector<double> w_;
};

ProbVector tensor(const ProbVector& a, const ProbVector& b);

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and PSD (all within 1e-9).
  explicit DensityMatrix(ComplexMatrix m);
  static DensityMatrix diagonal(const ProbVector& p);
  /// |psi><psi| for a normalised ket.
  static DensityMatrix pure(std::span<const cplx> ket);

  std::size_t dim() const noexcept { return m_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  cplx operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  /// Tr[rho^2] close to one.
  bool is_pure(double tol = 1e-9) const;

 private:
  ComplexMatrix m_;
};

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

ProbVector gibbs_state(const HamiltonianSpec& h, double beta);

/// A state together with the Hamiltonian and inverse temperature that fix
/// its Gibbs state.
class AthermalityState {
 public:
  AthermalityState(DensityMatrix state, HamiltonianSpec hamiltonian, double beta);

  const DensityMatrix& state() const noexcept { return state_; }
  const HamiltonianSpec& hamiltonian() const noexcept { return h_; }
  double beta() const noexcept { return beta_; }
  std::size_t dim() const noexcept { return state_.dim(); }

  ProbVector gibbs() const { return gibbs_state(h_, beta_); }
  DensityMatrix gibbs_matrix() const { return DensityMatrix::diagonal(gibbs()); }

 private:
  DensityMatrix state_;
  HamiltonianSpec h_;
  double beta_;
};

struct GoldenUnit {
  ProbVector state;  // (1, 0)
  ProbVector gibbs;  // (1/m, (m-1)/m)
};

/// Two-level reference pair; m may be any real number above 1.
GoldenUnit golden_unit(double m);

/// Composite system: state a (x) b, levels a_x + b_y (index x * m_b + y).
AthermalityState tensor(const AthermalityState& a, const AthermalityState& b);

HamiltonianSpec tensor(const HamiltonianSpec& a, const HamiltonianSpec& b);

ProbVector diag_of(const DensityMatrix& rho);

}  // namespace athermal
