#pragma once

// Entropies and divergences in bits.

#include "athermal/states.hpp"

namespace athermal {

/// Eigenvalues below this count as zero when testing support inclusion.
inline constexpr double kSupportTol = 1e-14;

struct DivergenceValue {
  double value = 0.0;
  bool support_violation = false;

  bool is_infinite() const noexcept { return support_violation; }
  static DivergenceValue infinite();
};

double von_neumann_entropy(const DensityMatrix& rho);

/// Umegaki relative entropy D(rho||gamma).
DivergenceValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& gamma);
DivergenceValue relative_entropy(const ProbVector& p, const ProbVector& g);

/// H(pinch(rho)) - H(rho).
double coherence(const DensityMatrix& rho, const HamiltonianSpec& h);

/// Hypothesis-testing divergence for commuting (classical) pairs.
/// eps must lie in [0, 1). Returns +inf when the optimal test has no
/// Gibbs weight.
double dmin_eps_classical(const ProbVector& p, const ProbVector& g, double eps);

/// log2 of the smallest t with t*gamma >= rho.
DivergenceValue dmax(const DensityMatrix& rho, const DensityMatrix& gamma);
DivergenceValue dmax(const ProbVector& p, const ProbVector& g);

/// log2 of the smallest t >= 1 with sum_x (p_x - t g_x)_+ <= eps. Values
/// below 0 are unreachable by normalised smoothings, so the result is 0
/// once the total-variation ball of radius eps contains g. +inf when
/// mass on {g = 0} exceeds eps.
double dmax_eps_classical(const ProbVector& p, const ProbVector& g, double eps);

/// D_min^eps(pinch(rho) || gamma).
double distill_single_shot(const AthermalityState& state, double eps);

/// D_max^eps(rho || gamma); smoothing (eps > 0) only for quasi-classical
/// rho, otherwise Error(UnsupportedSmoothing).
double cost_single_shot_gpo(const AthermalityState& state, double eps);

}  // namespace athermal
