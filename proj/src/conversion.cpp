#include "athermal/conversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "athermal/errors.hpp"
#include "athermal/simplex.hpp"
#include "athermal/symmetry.hpp"

namespace athermal {

namespace {

constexpr double kEqTol = 1e-12;

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimMismatch, std::string(what) + ": " + std::to_string(a) + " vs " +
                                            std::to_string(b));
  }
}

void require_bohr(const HamiltonianSpec& h) {
  const BohrReport rep = bohr_analysis(h);
  if (rep.non_degenerate_bohr) return;
  std::ostringstream os;
  os << "Hamiltonian needs a non-degenerate Bohr spectrum; colliding level pairs:";
  for (const auto& [u, v] : rep.colliding_pairs) {
    os << " (" << u.first << "," << u.second << ")~(" << v.first << "," << v.second << ")";
  }
  throw Error(ErrorCode::PreconditionViolated, os.str());
}

std::vector<double> diag_vec(const DensityMatrix& rho) { return rho.matrix().real_diagonal(); }

ProbVector two_level(double r) { return ProbVector::normalized({std::max(r, 0.0), std::max(1.0 - r, 0.0)}); }

// Alternating projection onto the PSD cone keeping the fixed entries.
bool complete_psd(const QMatrix& qm, std::size_t budget, double tol, ComplexMatrix& out,
                  std::size_t& iterations) {
  const std::size_t m = qm.q.dim();
  ComplexMatrix x = qm.q;
  for (iterations = 0; iterations <= budget; ++iterations) {
    const auto ev = eigvalsh(x);
    if (ev.front() >= -tol * std::max(1.0, ev.back())) {
      out = x;
      return true;
    }
    ComplexMatrix p = project_psd(x);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (!qm.is_free(i, j)) p(i, j) = qm.q(i, j);
    x = p.hermitian_part();
  }
  out = x;
  return false;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// GPC feasibility problem over z = (P, M), with off-diagonal
// M entries stored as sqrt(2) Re / sqrt(2) Im so that the Euclidean norm
// of z restricted to M is the Frobenius norm.
class GpcProblem {
 public:
  GpcProblem(const DensityMatrix& rho, const DensityMatrix& sigma, const ProbVector& g,
             const QMatrix& qm)
      : m_(rho.dim()), n_(2 * m_ * m_) {
    const auto r = diag_vec(rho), s = diag_vec(sigma);
    std::vector<std::vector<std::pair<std::size_t, double>>> rows;
    for (std::size_t x = 0; x < m_; ++x) {
      std::vector<std::pair<std::size_t, double>> row;
      for (std::size_t y = 0; y < m_; ++y) row.emplace_back(pidx(y, x), 1.0);
      rows.push_back(row);
      d_.push_back(1.0);
    }
    for (std::size_t y = 0; y < m_; ++y) {
      std::vector<std::pair<std::size_t, double>> row_r, row_g;
      for (std::size_t x = 0; x < m_; ++x) {
        row_r.emplace_back(pidx(y, x), r[x]);
        row_g.emplace_back(pidx(y, x), g[x]);
      }
      rows.push_back(row_r);
      d_.push_back(s[y]);
      rows.push_back(row_g);
      d_.push_back(g[y]);
    }
    for (std::size_t x = 0; x < m_; ++x) {
      rows.push_back({{mdiag(x), 1.0}, {pidx(x, x), -1.0}});
      d_.push_back(0.0);
    }
    for (std::size_t x = 0; x < m_; ++x)
      for (std::size_t y = x + 1; y < m_; ++y) {
        if (qm.is_free(x, y)) continue;
        rows.push_back({{moff(x, y), 1.0}});
        d_.push_back(std::numbers::sqrt2 * qm.q(x, y).real());
        rows.push_back({{moff(x, y) + 1, 1.0}});
        d_.push_back(std::numbers::sqrt2 * qm.q(x, y).imag());
      }
    c_ = RealMatrix(rows.size(), n_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& [j, v] : rows[i]) c_(i, j) += v;
    orthonormalize();
  }

  std::size_t size() const { return n_; }

  std::vector<double> constraint_residual(const std::vector<double>& z) const {
    std::vector<double> res = c_.apply(z);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= d_[i];
    return res;
  }

  double violation(const std::vector<double>& z) const {
    double worst = 0.0;
    for (double v : constraint_residual(z)) worst = std::max(worst, std::abs(v));
    return worst;
  }

  // z - sum_i u_i (u_i . z - t_i), with u_i an orthonormal basis of the row
  // space and t_i = u_i . z for every z in the affine set.
  std::vector<double> project_affine(const std::vector<double>& z) const {
    std::vector<double> out(z);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const double c = dot(basis_[i], z) - target_[i];
      for (std::size_t j = 0; j < n_; ++j) out[j] -= c * basis_[i][j];
    }
    return out;
  }

  std::vector<double> project_cone(const std::vector<double>& z) const {
    std::vector<double> out(z);
    for (std::size_t j = 0; j < m_ * m_; ++j) out[j] = std::max(0.0, z[j]);
    const ComplexMatrix p = project_psd(hermitian(z));
    for (std::size_t x = 0; x < m_; ++x) {
      out[mdiag(x)] = p(x, x).real();
      for (std::size_t y = x + 1; y < m_; ++y) {
        out[moff(x, y)] = std::numbers::sqrt2 * p(x, y).real();
        out[moff(x, y) + 1] = std::numbers::sqrt2 * p(x, y).imag();
      }
    }
    return out;
  }

  ComplexMatrix hermitian(const std::vector<double>& z) const {
    ComplexMatrix h(m_);
    for (std::size_t x = 0; x < m_; ++x) {
      h(x, x) = z[mdiag(x)];
      for (std::size_t y = x + 1; y < m_; ++y) {
        h(x, y) = cplx(z[moff(x, y)], z[moff(x, y) + 1]) / std::numbers::sqrt2;
        h(y, x) = std::conj(h(x, y));
      }
    }
    return h;
  }

  std::vector<double> pack(const RealMatrix& p, const ComplexMatrix& q) const {
    std::vector<double> z(n_, 0.0);
    for (std::size_t y = 0; y < m_; ++y)
      for (std::size_t x = 0; x < m_; ++x) z[pidx(y, x)] = p(y, x);
    for (std::size_t x = 0; x < m_; ++x) {
      z[mdiag(x)] = q(x, x).real();
      for (std::size_t y = x + 1; y < m_; ++y) {
        z[moff(x, y)] = std::numbers::sqrt2 * q(x, y).real();
        z[moff(x, y) + 1] = std::numbers::sqrt2 * q(x, y).imag();
      }
    }
    return z;
  }

  RealMatrix stochastic(const std::vector<double>& z) const {
    RealMatrix p(m_, m_);
    for (std::size_t y = 0; y < m_; ++y)
      for (std::size_t x = 0; x < m_; ++x) p(y, x) = z[pidx(y, x)];
    return p;
  }

  // Farkas test at an affine point y: v = y - P_K(y) lies in the polar cone;
  // if lambda^T d exceeds what the non-normal part of v can explain for any
  // z in A cap K (||z|| <= sqrt(m + m^2)), the intersection is empty.
  // Returns the certified gap (> 0) or a non-positive number.
  double certificate(const std::vector<double>& y) const {
    const auto py = project_cone(y);
    std::vector<double> v(n_);
    for (std::size_t j = 0; j < n_; ++j) v[j] = y[j] - py[j];
    // v = C^T lambda + nu; lambda . d = (C^T lambda) . z for z in the affine set.
    std::vector<double> nu(v);
    double ld = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const double c = dot(basis_[i], v);
      ld += c * target_[i];
      for (std::size_t j = 0; j < n_; ++j) nu[j] -= c * basis_[i][j];
    }
    const double zmax = std::sqrt(static_cast<double>(m_ + m_ * m_));
    return ld - norm2(nu) * zmax - 1e-9 * norm2(v) * zmax - 1e-12;
  }

 private:
  std::size_t pidx(std::size_t y, std::size_t x) const { return y * m_ + x; }
  std::size_t mdiag(std::size_t x) const { return m_ * m_ + x; }
  std::size_t moff(std::size_t x, std::size_t y) const {
    // Offset of the pair x < y in row-major upper-triangle order.
    const std::size_t before = x * m_ - x * (x + 1) / 2;
    return m_ * m_ + m_ + 2 * (before + (y - x - 1));
  }

  static double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
  }

  // Modified Gram-Schmidt with one reorthogonalisation pass. Rows whose
  // remainder is below 1e-10 of their norm are treated as dependent.
  void orthonormalize() {
    for (std::size_t i = 0; i < c_.rows(); ++i) {
      std::vector<double> u(n_);
      for (std::size_t j = 0; j < n_; ++j) u[j] = c_(i, j);
      const double norm0 = norm2(u);
      double rhs = d_[i];
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t k = 0; k < basis_.size(); ++k) {
          const double a = dot(basis_[k], u);
          rhs -= a * target_[k];
          for (std::size_t j = 0; j < n_; ++j) u[j] -= a * basis_[k][j];
        }
      const double beta = norm2(u);
      if (beta <= 1e-10 * norm0) continue;
      for (double& x : u) x /= beta;
      basis_.push_back(std::move(u));
      target_.push_back(rhs / beta);
    }
  }

  std::size_t m_, n_;
  RealMatrix c_;
  std::vector<double> d_;
  std::vector<std::vector<double>> basis_;
  std::vector<double> target_;
};

}  // namespace

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::Feasible: return "Feasible";
    case Decision::Infeasible: return "Infeasible";
    case Decision::NotFoundWithinBudget: return "NotFoundWithinBudget";
  }
  return "?";
}

bool QMatrix::has_free() const {
  return std::any_of(free.begin(), free.end(), [](char c) { return c != 0; });
}

QMatrix build_Q(const DensityMatrix& rho, const DensityMatrix& sigma, double zero_tol) {
  require_same_dim(rho.dim(), sigma.dim(), "build_Q");
  const std::size_t m = rho.dim();
  QMatrix out{ComplexMatrix(m), std::vector<char>(m * m, 0)};
  for (std::size_t x = 0; x < m; ++x) {
    const double rx = rho(x, x).real(), sx = sigma(x, x).real();
    if (rx <= zero_tol) {
      if (sx > zero_tol) {
        throw Error(ErrorCode::ZeroDiagonal, "r_" + std::to_string(x) + std::to_string(x) +
                                                 " vanishes while s_" + std::to_string(x) +
                                                 std::to_string(x) + " > 0");
      }
      out.q(x, x) = 1.0;
    } else {
      out.q(x, x) = std::min(1.0, sx / rx);
    }
    for (std::size_t y = 0; y < m; ++y) {
      if (y == x) continue;
      const cplx r = rho(x, y), s = sigma(x, y);
      if (std::abs(r) > zero_tol) {
        out.q(x, y) = s / r;
      } else if (std::abs(s) > zero_tol) {
        if (!out.structurally_infeasible) {
          out.structurally_infeasible = true;
          out.bad_row = x;
          out.bad_col = y;
        }
      } else {
        out.free[x * m + y] = 1;
      }
    }
  }
  return out;
}

RealMatrix diagonal_transfer_map(std::span<const double> r, std::span<const double> s) {
  require_same_dim(r.size(), s.size(), "transfer map");
  const std::size_t m = r.size();
  double mu = 0.0;
  for (std::size_t x = 0; x < m; ++x) mu += std::abs(s[x] - r[x]);
  mu *= 0.5;
  RealMatrix p = RealMatrix::identity(m);
  if (mu <= kEqTol) return p;
  for (std::size_t x = 0; x < m; ++x) {
    if (r[x] <= 0.0) continue;
    p(x, x) = std::min(1.0, s[x] / r[x]);
    const double out = std::max(0.0, r[x] - s[x]);
    for (std::size_t y = 0; y < m; ++y)
      if (y != x) p(y, x) = std::max(0.0, s[y] - r[y]) * out / (mu * r[x]);
  }
  return p;
}

ComplexMatrix witness_choi(const RealMatrix& p, const ComplexMatrix& q) {
  const std::size_t m = q.dim();
  ComplexMatrix j(m * m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) j(x * m + y, x * m + y) = p(y, x);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      if (x != y) j(x * m + x, y * m + y) = q(x, y);
  return j;
}

ConversionVerdict covariant_convertible(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const HamiltonianSpec& h, const CovariantOptions& opt) {
  require_same_dim(rho.dim(), sigma.dim(), "covariant_convertible");
  require_same_dim(rho.dim(), h.dim(), "covariant_convertible Hamiltonian");
  require_bohr(h);
  ConversionVerdict v;
  v.criterion = "covariant-criterion";
  const QMatrix qm = build_Q(rho, sigma, opt.zero_tol);
  if (qm.structurally_infeasible) {
    v.decision = Decision::Infeasible;
    v.margin = -std::abs(sigma(qm.bad_row, qm.bad_col));
    v.diagnostics = "r_" + std::to_string(qm.bad_row) + std::to_string(qm.bad_col) +
                    " vanishes but s does not: covariant maps cannot create that coherence";
    return v;
  }
  ComplexMatrix q = qm.q;
  if (qm.has_free()) {
    const bool ok = complete_psd(qm, opt.completion_budget, opt.completion_tol, q, v.iterations);
    v.margin = eigvalsh(q).front();
    if (!ok) {
      v.decision = Decision::NotFoundWithinBudget;
      v.diagnostics = "no PSD completion of the free Q entries found";
      return v;
    }
    v.diagnostics = "free Q entries completed by alternating projection";
  } else {
    v.margin = eigvalsh(q).front();
    if (!is_psd(q)) {
      v.decision = Decision::Infeasible;
      v.diagnostics = "Q is not positive semidefinite";
      return v;
    }
  }
  v.decision = Decision::Feasible;
  v.witness_P = diagonal_transfer_map(diag_vec(rho), diag_vec(sigma));
  v.witness_Q = q;
  return v;
}

std::vector<cplx> pure_parent(const DensityMatrix& sigma) {
  std::vector<cplx> psi(sigma.dim());
  for (std::size_t x = 0; x < sigma.dim(); ++x) psi[x] = std::sqrt(std::max(0.0, sigma(x, x).real()));
  return psi;
}

double relative_majorization_margin(const ProbVector& p, const ProbVector& g, const ProbVector& q,
                                    const ProbVector& h) {
  require_same_dim(p.dim(), g.dim(), "relative majorization (p, g)");
  require_same_dim(q.dim(), h.dim(), "relative majorization (q, h)");
  std::set<double> ts{0.0};
  for (std::size_t x = 0; x < p.dim(); ++x) {
    if (g[x] > 0.0) {
      ts.insert(p[x] / g[x]);
    } else if (p[x] > 0.0) {
      throw Error(ErrorCode::ZeroGibbsComponent, "g vanishes where p has mass");
    }
  }
  for (std::size_t y = 0; y < q.dim(); ++y) {
    if (h[y] > 0.0) {
      ts.insert(q[y] / h[y]);
    } else if (q[y] > 0.0) {
      throw Error(ErrorCode::ZeroGibbsComponent, "h vanishes where q has mass");
    }
  }
  auto f = [](const ProbVector& a, const ProbVector& b, double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::max(0.0, a[i] - t * b[i]);
    return s;
  };
  double margin = std::numeric_limits<double>::infinity();
  for (double t : ts) margin = std::min(margin, f(p, g, t) - f(q, h, t));
  return margin;
}

bool relative_majorization(const ProbVector& p, const ProbVector& g, const ProbVector& q,
                           const ProbVector& h, double tol) {
  return relative_majorization_margin(p, g, q, h) >= -tol;
}

namespace {

// Column-stochastic E with E p = q, E g = h minimizing sum_{y,x} cost(y, x) E(y, x).
std::optional<RealMatrix> stochastic_map_lp(const ProbVector& p, const ProbVector& g, const ProbVector& q,
                                            const ProbVector& h, const RealMatrix* cost) {
  const std::size_t mi = p.dim(), mo = q.dim();
  RealMatrix a(mi + 2 * mo, mi * mo);
  std::vector<double> b;
  for (std::size_t x = 0; x < mi; ++x) {
    for (std::size_t y = 0; y < mo; ++y) a(x, y * mi + x) = 1.0;
    b.push_back(1.0);
  }
  for (std::size_t y = 0; y < mo; ++y) {
    for (std::size_t x = 0; x < mi; ++x) {
      a(mi + y, y * mi + x) = p[x];
      a(mi + mo + y, y * mi + x) = g[x];
    }
  }
  for (std::size_t y = 0; y < mo; ++y) b.push_back(q[y]);
  for (std::size_t y = 0; y < mo; ++y) b.push_back(h[y]);
  std::vector<double> c(mi * mo, 0.0);
  if (cost != nullptr)
    for (std::size_t y = 0; y < mo; ++y)
      for (std::size_t x = 0; x < mi; ++x) c[y * mi + x] = (*cost)(y, x);
  const LpResult res = solve_lp(a, b, c);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  RealMatrix e(mo, mi);
  for (std::size_t y = 0; y < mo; ++y)
    for (std::size_t x = 0; x < mi; ++x) e(y, x) = res.x[y * mi + x];
  return e;
}

}  // namespace

std::optional<RealMatrix> find_stochastic_map(const ProbVector& p, const ProbVector& g,
                                              const ProbVector& q, const ProbVector& h) {
  require_same_dim(p.dim(), g.dim(), "stochastic map input");
  require_same_dim(q.dim(), h.dim(), "stochastic map output");
  return stochastic_map_lp(p, g, q, h, nullptr);
}

ConversionVerdict qubit_gpc_criterion(const QubitParams& qp) {
  const double r = qp.r, s = qp.s, g = qp.g;
  if (!(g > 0.0 && g < 1.0)) throw Error(ErrorCode::InvalidState, "Gibbs weight must lie in (0, 1)");
  ConversionVerdict v;
  const double abs_a = std::abs(qp.a), abs_b = std::abs(qp.b);
  const ProbVector gv({g, 1.0 - g});

  auto finish_classical = [&](ConversionVerdict& out, const ProbVector& rv, const ProbVector& sv) {
    out.criterion = "relative-majorization";
    out.margin = relative_majorization_margin(rv, gv, sv, gv);
    out.decision = out.margin >= -1e-10 ? Decision::Feasible : Decision::Infeasible;
    if (out.feasible()) {
      if (auto e = find_stochastic_map(rv, gv, sv, gv)) {
        out.witness_P = *e;
        ComplexMatrix qm(2);
        qm(0, 0) = (*e)(0, 0);
        qm(1, 1) = (*e)(1, 1);
        out.witness_Q = qm;
      }
    }
  };

  if (std::abs(g - 0.5) <= kEqTol) {
    // Trivial Hamiltonian: GPC maps are the unital channels, which act by
    // majorization on the spectra.
    auto top = [](double d, double off) { return 0.5 + std::sqrt(0.25 * (2 * d - 1) * (2 * d - 1) + off * off); };
    v.criterion = "relative-majorization";
    v.margin = top(r, abs_a) - top(s, abs_b);
    v.decision = v.margin >= -kEqTol ? Decision::Feasible : Decision::Infeasible;
    v.diagnostics = "g = 1/2: spectra compared by majorization";
    return v;
  }
  if (abs_a <= kEqTol) {
    if (abs_b > kEqTol) {
      v.criterion = "relative-majorization";
      v.decision = Decision::Infeasible;
      v.margin = -abs_b;
      v.diagnostics = "source has no coherence but the target does";
      return v;
    }
    finish_classical(v, two_level(r), two_level(s));
    return v;
  }
  v.criterion = "qubit-ratio-bound";
  if (std::abs(r - g) <= kEqTol) {
    if (std::abs(s - g) > kEqTol) {
      v.decision = Decision::Infeasible;
      v.margin = -std::abs(s - g);
      v.diagnostics = "source diagonal equals the Gibbs state, target diagonal does not";
      return v;
    }
    v.margin = abs_a - abs_b;
    v.decision = v.margin >= -kEqTol ? Decision::Feasible : Decision::Infeasible;
    if (v.feasible()) {
      v.witness_P = RealMatrix::identity(2);
      ComplexMatrix qm = ComplexMatrix::identity(2);
      qm(0, 1) = qp.b / qp.a;
      qm(1, 0) = std::conj(qm(0, 1));
      v.witness_Q = qm;
    }
    return v;
  }
  const double maj = relative_majorization_margin(two_level(r), gv, two_level(s), gv);
  if (maj < -1e-10) {
    v.decision = Decision::Infeasible;
    v.margin = maj;
    v.diagnostics = "diagonals fail relative majorization";
    return v;
  }
  const double det1 = s * (1.0 - g) - g * (1.0 - r);
  const double det2 = r * (1.0 - g) - g * (1.0 - s);
  const double p00 = det1 / (r - g), p11 = det2 / (r - g);
  const double rhs = p00 * p11;
  const double lhs = abs_b * abs_b / (abs_a * abs_a);
  v.margin = rhs - lhs;
  v.decision = v.margin >= -kEqTol * std::max(1.0, std::abs(rhs)) ? Decision::Feasible : Decision::Infeasible;
  if (v.feasible()) {
    RealMatrix p(2, 2);
    p(0, 0) = p00;
    p(1, 0) = 1.0 - p00;
    p(1, 1) = p11;
    p(0, 1) = 1.0 - p11;
    v.witness_P = p;
    ComplexMatrix qm(2);
    qm(0, 0) = p00;
    qm(1, 1) = p11;
    qm(0, 1) = qp.b / qp.a;
    qm(1, 0) = std::conj(qm(0, 1));
    v.witness_Q = qm;
  }
  return v;
}

ConversionVerdict gpc_convertible_qubit(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const ProbVector& gamma) {
  if (rho.dim() != 2 || sigma.dim() != 2 || gamma.dim() != 2) {
    throw Error(ErrorCode::DimNot2, "closed-form GPC criterion is for qubits only");
  }
  return qubit_gpc_criterion(
      {rho(0, 0).real(), rho(0, 1), sigma(0, 0).real(), sigma(0, 1), gamma[0]});
}

ConversionVerdict gpc_feasible(const DensityMatrix& rho, const DensityMatrix& sigma,
                               const ProbVector& gamma, const HamiltonianSpec& h,
                               const GpcOptions& opt) {
  require_same_dim(rho.dim(), sigma.dim(), "gpc_feasible");
  require_same_dim(rho.dim(), h.dim(), "gpc_feasible Hamiltonian");
  require_same_dim(rho.dim(), gamma.dim(), "gpc_feasible Gibbs state");
  require_bohr(h);
  const std::size_t m = rho.dim();
  ConversionVerdict v;
  v.criterion = "gpc-feasibility";

  const ProbVector r = diag_of(rho), s = diag_of(sigma);
  const double maj = relative_majorization_margin(r, gamma, s, gamma);
  if (maj < -1e-10) {
    v.decision = Decision::Infeasible;
    v.margin = maj;
    v.criterion = "relative-majorization";
    v.diagnostics = "diagonals fail relative majorization";
    return v;
  }
  QMatrix qm = build_Q(rho, sigma, opt.zero_tol);
  if (qm.structurally_infeasible) {
    v.decision = Decision::Infeasible;
    v.margin = -std::abs(sigma(qm.bad_row, qm.bad_col));
    v.diagnostics = "target coherence where the source has none";
    return v;
  }
  if (!qm.has_free()) {
    // p_{x|x} <= 1, so a PSD Q needs the unit-diagonal version to be PSD.
    ComplexMatrix q1 = qm.q;
    for (std::size_t x = 0; x < m; ++x) q1(x, x) = 1.0;
    const double e = eigvalsh(q1).front();
    if (e < -1e-9) {
      v.decision = Decision::Infeasible;
      v.margin = e;
      v.diagnostics = "off-diagonal ratios exceed what any stochastic diagonal allows";
      return v;
    }
  }

  const GpcProblem prob(rho, sigma, gamma, qm);
  std::vector<double> x = prob.project_affine(std::vector<double>(prob.size(), 0.0));
  const double inconsistency = prob.violation(x);
  if (inconsistency > opt.residual_tol) {
    v.decision = Decision::Infeasible;
    v.margin = -inconsistency;
    v.diagnostics = "linear constraints P r = s, P g = g are inconsistent";
    return v;
  }
  // Maximum-trace stochastic map with free Q entries set to zero. Raising
  // the diagonal of Q only helps positivity, so this settles most instances.
  RealMatrix neg_identity(m, m);
  for (std::size_t k = 0; k < m; ++k) neg_identity(k, k) = -1.0;
  if (auto p = opt.lp_warm_start ? stochastic_map_lp(r, gamma, s, gamma, &neg_identity) : std::nullopt) {
    ComplexMatrix q = qm.q;
    for (std::size_t a = 0; a < m; ++a) {
      q(a, a) = (*p)(a, a);
      for (std::size_t b = 0; b < m; ++b)
        if (a != b && qm.is_free(a, b)) q(a, b) = 0.0;
    }
    const double e = eigvalsh(q).front();
    const std::vector<double> z = prob.pack(*p, q);
    if (e >= -1e-12 && prob.violation(z) < opt.residual_tol) {
      v.decision = Decision::Feasible;
      v.witness_P = *p;
      v.witness_Q = q;
      v.margin = e;
      v.diagnostics = "maximum-trace stochastic map gives a positive Q";
      return v;
    }
    x = prob.project_affine(z);
  }
  std::vector<double> corr(prob.size(), 0.0);
  for (std::size_t k = 1; k <= opt.budget; ++k) {
    const std::vector<double> y = prob.project_affine(x);
    std::vector<double> shifted(y);
    for (std::size_t j = 0; j < shifted.size(); ++j) shifted[j] += corr[j];
    x = prob.project_cone(shifted);
    for (std::size_t j = 0; j < shifted.size(); ++j) corr[j] = shifted[j] - x[j];
    v.iterations = k;
    if (prob.violation(x) < opt.residual_tol) {
      v.decision = Decision::Feasible;
      v.witness_P = prob.stochastic(x);
      v.witness_Q = prob.hermitian(x);
      v.margin = eigvalsh(*v.witness_Q).front();
      v.diagnostics = "Dykstra converged in " + std::to_string(k) + " iterations";
      return v;
    }
    if (k % opt.certificate_interval == 0) {
      const double gap = prob.certificate(y);
      if (gap > 0.0) {
        v.decision = Decision::Infeasible;
        v.margin = -gap;
        v.diagnostics = "Farkas certificate from the projection gap after " + std::to_string(k) +
                        " iterations";
        return v;
      }
    }
  }
  v.decision = Decision::NotFoundWithinBudget;
  v.margin = -prob.violation(x);
  v.diagnostics = "residual " + std::to_string(prob.violation(x)) + " after " +
                  std::to_string(opt.budget) + " iterations";
  return v;
}

ConversionVerdict same_diagonal_gpc(const DensityMatrix& rho, const DensityMatrix& sigma,
                                    const HamiltonianSpec& h, const CovariantOptions& opt) {
  require_same_dim(rho.dim(), sigma.dim(), "same_diagonal_gpc");
  for (std::size_t x = 0; x < rho.dim(); ++x) {
    if (std::abs(rho(x, x).real() - sigma(x, x).real()) > 1e-9) {
      throw Error(ErrorCode::DiagonalMismatch, "diagonals differ at index " + std::to_string(x));
    }
  }
  ConversionVerdict v = covariant_convertible(rho, sigma, h, opt);
  v.criterion = "same-diagonal";
  if (v.feasible()) v.witness_P = RealMatrix::identity(rho.dim());
  return v;
}

std::string check_witness(const ConversionVerdict& v, const DensityMatrix& rho,
                          const DensityMatrix& sigma, const HamiltonianSpec& h,
                          const ProbVector* gamma, double tol) {
  if (!v.witness_P || !v.witness_Q) return "missing witness";
  const RealMatrix& p = *v.witness_P;
  const ComplexMatrix& q = *v.witness_Q;
  const std::size_t m = rho.dim();
  if (p.rows() != m || p.cols() != m || q.dim() != m) return "witness dimension";
  const auto r = diag_vec(rho), s = diag_vec(sigma);
  for (std::size_t x = 0; x < m; ++x) {
    double col = 0.0;
    for (std::size_t y = 0; y < m; ++y) {
      if (p(y, x) < -tol) return "negative P entry";
      col += p(y, x);
    }
    if (std::abs(col - 1.0) > tol) return "P column " + std::to_string(x) + " does not sum to 1";
  }
  const auto pr = p.apply(r);
  for (std::size_t y = 0; y < m; ++y)
    if (std::abs(pr[y] - s[y]) > tol) return "P r != s";
  if (gamma != nullptr) {
    const auto pg = p.apply(gamma->weights());
    for (std::size_t y = 0; y < m; ++y)
      if (std::abs(pg[y] - (*gamma)[y]) > tol) return "P g != g";
  }
  for (std::size_t x = 0; x < m; ++x) {
    if (std::abs(q(x, x) - cplx(p(x, x))) > tol) return "diag Q != diag P";
    for (std::size_t y = 0; y < m; ++y)
      if (x != y && std::abs(q(x, y) * rho(x, y) - sigma(x, y)) > tol) return "Q o rho != sigma off the diagonal";
  }
  try {
    const ChoiMatrix j(witness_choi(p, q), m, m, tol);
    if (!is_covariant(j, h, h, tol)) return "witness Choi matrix is not covariant";
    const ComplexMatrix out = apply_channel(j, rho.matrix());
    if ((out - sigma.matrix()).max_abs() > tol) return "witness channel does not map rho to sigma";
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

double conversion_distance_classical(const ProbVector& p, const ProbVector& g_in, const ProbVector& q,
                                     const ProbVector& g_out) {
  require_same_dim(p.dim(), g_in.dim(), "distance input");
  require_same_dim(q.dim(), g_out.dim(), "distance output");
  const std::size_t mi = p.dim(), mo = q.dim();
  const std::size_t nt = mi * mo, n = nt + 2 * mo;
  RealMatrix a(mi + 2 * mo, n);
  std::vector<double> b, c(n, 0.0);
  for (std::size_t x = 0; x < mi; ++x) {
    for (std::size_t y = 0; y < mo; ++y) a(x, y * mi + x) = 1.0;
    b.push_back(1.0);
  }
  for (std::size_t y = 0; y < mo; ++y) {
    for (std::size_t x = 0; x < mi; ++x) a(mi + y, y * mi + x) = g_in[x];
    b.push_back(g_out[y]);
  }
  for (std::size_t y = 0; y < mo; ++y) {
    for (std::size_t x = 0; x < mi; ++x) a(mi + mo + y, y * mi + x) = p[x];
    a(mi + mo + y, nt + y) = 1.0;
    a(mi + mo + y, nt + mo + y) = -1.0;
    b.push_back(q[y]);
    c[nt + y] = 1.0;
  }
  const LpResult res = solve_lp(a, b, c);
  if (res.status != LpStatus::Optimal) {
    throw Error(ErrorCode::LPNumericalFailure, "conversion-distance LP did not reach an optimum");
  }
  return std::max(0.0, res.objective);
}

double conversion_distance_to_quasiclassical(const DensityMatrix& rho, const ProbVector& g_in,
                                             const ProbVector& q, const ProbVector& g_out,
                                             const HamiltonianSpec& h_in) {
  const auto [p, g] = joint_classical_spectrum(rho, h_in, g_in);
  return conversion_distance_classical(p, g, q, g_out);
}

}  // namespace athermal
