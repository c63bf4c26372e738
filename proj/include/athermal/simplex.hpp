#pragma once

// Dense two-phase simplex for small linear programs in standard form
//   minimize c^T x  subject to  A x = b,  x >= 0.
// Bland's rule throughout, so no cycling; sizes here are a few hundred
// variables at most.

#include <vector>

#include "athermal/linalg.hpp"

namespace athermal {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  /// Phase-one optimum: total artificial mass left. Zero for feasible data.
  double infeasibility = 0.0;
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double pivot_tol = 1e-11;
  std::size_t max_pivots = 50000;
};

/// Throws Error(LPNumericalFailure) when the pivot cap is hit.
LpResult solve_lp(const RealMatrix& a, std::vector<double> b, const std::vector<double>& c,
                  const LpOptions& opt = {});

}  // namespace athermal
