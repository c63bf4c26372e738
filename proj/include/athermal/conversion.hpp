#pragma once

// Single-shot conversion deciders for athermality pairs: covariant
// conversion with a Bohr-non-degenerate Hamiltonian, Gibbs-preserving
// covariant (GPC) feasibility, the qubit closed form, relative
// majorization and the distance to quasi-classical targets.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "athermal/states.hpp"

namespace athermal {

enum class Decision { Feasible, Infeasible, NotFoundWithinBudget };

std::string_view to_string(Decision d);

struct ConversionVerdict {
  Decision decision = Decision::Infeasible;
  std::optional<ComplexMatrix> witness_Q;
  /// Column stochastic: witness_P(y, x) = p_{y|x}.
  std::optional<RealMatrix> witness_P;
  /// Signed slack of the binding condition (>= 0 on the feasible side).
  double margin = 0.0;
  /// Key of the criterion that decided the instance.
  std::string criterion;
  std::string diagnostics;
  std::size_t iterations = 0;

  bool feasible() const noexcept { return decision == Decision::Feasible; }
};

// --- Q matrix -------------------------------------------------------------

struct QMatrix {
  ComplexMatrix q;
  /// free[x * m + y]: r_xy and s_xy both vanish, so q_xy is unconstrained.
  std::vector<char> free;
  bool structurally_infeasible = false;
  std::size_t bad_row = 0, bad_col = 0;

  bool is_free(std::size_t x, std::size_t y) const { return free[x * q.dim() + y] != 0; }
  bool has_free() const;
};

/// q_xx = min{1, s_xx/r_xx}, q_xy = s_xy/r_xy. Throws Error(ZeroDiagonal)
/// when r_xx vanishes under a populated s_xx.
QMatrix build_Q(const DensityMatrix& rho, const DensityMatrix& sigma, double zero_tol = 1e-12);

/// Stochastic map p_{x|x} = min{1, s_x/r_x},
/// p_{y|x} = (s_y - r_y)_+ (r_x - s_x)_+ / (mu r_x), mu = 1/2 ||s - r||_1.
/// Identity when mu = 0.
RealMatrix diagonal_transfer_map(std::span<const double> r, std::span<const double> s);

/// J = sum_{x,y} p_{y|x} |x><x| (x) |y><y| + sum_{x != y} q_xy |x><y| (x) |x><y|.
ComplexMatrix witness_choi(const RealMatrix& p, const ComplexMatrix& q);

struct CovariantOptions {
  double zero_tol = 1e-12;
  std::size_t completion_budget = 10000;
  double completion_tol = 1e-10;
};

/// Requires a non-degenerate Bohr spectrum (else Error(PreconditionViolated)).
ConversionVerdict covariant_convertible(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const HamiltonianSpec& h, const CovariantOptions& opt = {});

/// sum_x sqrt(sigma_xx) |x>.
std::vector<cplx> pure_parent(const DensityMatrix& sigma);

// --- classical ------------------------------------------------------------

/// min over t >= 0 of sum_x (p_x - t g_x)_+ - sum_y (q_y - t h_y)_+, taken
/// over the breakpoints. Throws Error(ZeroGibbsComponent) when a Gibbs
/// entry vanishes under positive mass.
double relative_majorization_margin(const ProbVector& p, const ProbVector& g, const ProbVector& q,
                                    const ProbVector& h);

bool relative_majorization(const ProbVector& p, const ProbVector& g, const ProbVector& q,
                           const ProbVector& h, double tol = 1e-10);

/// Column-stochastic E with E p = q and E g = h, found by linear
/// programming; nullopt when none exists.
std::optional<RealMatrix> find_stochastic_map(const ProbVector& p, const ProbVector& g,
                                              const ProbVector& q, const ProbVector& h);

// --- GPC ------------------------------------------------------------------

/// Qubit data in the convention rho = [[r, a], [a*, 1-r]],
/// sigma = [[s, b], [b*, 1-s]], gamma = diag(g, 1-g). No state validity is
/// required, which lets sweeps cross the boundary of the state space.
struct QubitParams {
  double r;
  cplx a;
  double s;
  cplx b;
  double g;
};

ConversionVerdict qubit_gpc_criterion(const QubitParams& q);

/// Throws Error(DimNot2) for other dimensions.
ConversionVerdict gpc_convertible_qubit(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const ProbVector& gamma);

struct GpcOptions {
  std::size_t budget = 10000;
  double residual_tol = 1e-9;
  double zero_tol = 1e-12;
  std::size_t certificate_interval = 20;
  /// Try the maximum-trace stochastic map before iterating; it also seeds
  /// the iteration.
  bool lp_warm_start = true;
};

/// Searches for (P, Q) by Dykstra projections between the affine
/// constraints and the cone {P >= 0} x {Q PSD}. Infeasibility is
/// certified by the necessary conditions or by a Farkas vector read off
/// the projection gap; anything else ends as NotFoundWithinBudget.
ConversionVerdict gpc_feasible(const DensityMatrix& rho, const DensityMatrix& sigma,
                               const ProbVector& gamma, const HamiltonianSpec& h,
                               const GpcOptions& opt = {});

/// Equal diagonals: feasible iff I + sum_{x != y} (s_xy/r_xy)|x><y| is PSD.
ConversionVerdict same_diagonal_gpc(const DensityMatrix& rho, const DensityMatrix& sigma,
                                    const HamiltonianSpec& h, const CovariantOptions& opt = {});

/// Checks a Feasible verdict's witnesses against rho -> sigma (and gamma ->
/// gamma when given) within tol. Returns an empty string or the failure.
std::string check_witness(const ConversionVerdict& v, const DensityMatrix& rho,
                          const DensityMatrix& sigma, const HamiltonianSpec& h,
                          const ProbVector* gamma = nullptr, double tol = 1e-8);

/// min 1/2 ||q - T p||_1 over column-stochastic T with T g_in = g_out, where
/// p is the spectrum of pinch(rho) paired with g_in.
double conversion_distance_to_quasiclassical(const DensityMatrix& rho, const ProbVector& g_in,
                                             const ProbVector& q, const ProbVector& g_out,
                                             const HamiltonianSpec& h_in);

/// Same LP on classical data.
double conversion_distance_classical(const ProbVector& p, const ProbVector& g_in, const ProbVector& q,
                                     const ProbVector& g_out);

}  // namespace athermal
