#include "athermal/simplex.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "athermal/errors.hpp"

namespace athermal {

namespace {

struct Tableau {
  std::size_t rows, cols;  // cols excludes the rhs column
  std::vector<double> t;   // (rows + 1) x (cols + 1); last row is the objective
  std::vector<std::size_t> basis;

  double& at(std::size_t i, std::size_t j) { return t[i * (cols + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols); }
  double& obj(std::size_t j) { return at(rows, j); }

  void pivot(std::size_t r, std::size_t c) {
    const double piv = at(r, c);
    for (std::size_t j = 0; j <= cols; ++j) at(r, j) /= piv;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    basis[r] = c;
  }

  void set_objective(const std::vector<double>& cost) {
    for (std::size_t j = 0; j <= cols; ++j) obj(j) = j < cols ? cost[j] : 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      const double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) obj(j) -= cb * at(i, j);
    }
  }

  // Returns false when unbounded. Columns >= allowed_cols never enter.
  bool optimise(std::size_t allowed_cols, const LpOptions& opt, std::size_t& pivots) {
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (obj(j) < -opt.pivot_tol) {
          enter = j;
          break;
        }
      }
      if (enter == cols) return true;
      std::size_t leave = rows;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows; ++i) {
        const double a = at(i, enter);
        if (a <= opt.pivot_tol) continue;
        const double ratio = rhs(i) / a;
        if (leave == rows || ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == rows) return false;
      pivot(leave, enter);
      if (++pivots > opt.max_pivots) {
        throw Error(ErrorCode::LPNumericalFailure, "simplex pivot cap reached");
      }
    }
  }
};

}  // namespace

LpResult solve_lp(const RealMatrix& a, std::vector<double> b, const std::vector<double>& c,
                  const LpOptions& opt) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m || c.size() != n) {
    throw Error(ErrorCode::DimMismatch, "LP data sizes disagree");
  }
  Tableau tab{m, n + m, std::vector<double>((m + 1) * (n + m + 1), 0.0), std::vector<std::size_t>(m)};
  double b_scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign * a(i, j);
    tab.at(i, n + i) = 1.0;
    tab.rhs(i) = sign * b[i];
    tab.basis[i] = n + i;
    b_scale = std::max(b_scale, std::abs(b[i]));
  }

  std::size_t pivots = 0;
  std::vector<double> phase1(n + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1.0;
  tab.set_objective(phase1);
  tab.optimise(n + m, opt, pivots);

  LpResult res;
  res.infeasibility = -tab.obj(n + m);
  if (res.infeasibility > opt.feasibility_tol * b_scale) {
    res.status = LpStatus::Infeasible;
    return res;
  }

  // Drive zero-level artificials out of the basis; rows with no usable
  // pivot are redundant and get zeroed.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(tab.at(i, j)) > 1e-9) {
        col = j;
        break;
      }
    }
    if (col < n) {
      tab.pivot(i, col);
    } else {
      for (std::size_t j = 0; j <= n + m; ++j) tab.at(i, j) = 0.0;
    }
  }

  std::vector<double> cost(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  tab.set_objective(cost);
  if (!tab.optimise(n, opt, pivots)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] < n) res.x[tab.basis[i]] = std::max(0.0, tab.rhs(i));
  res.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

}  // namespace athermal
