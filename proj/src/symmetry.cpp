#include "athermal/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "athermal/errors.hpp"

namespace athermal {

namespace {

double pair_tol(const HamiltonianSpec& ha, const HamiltonianSpec& hb, double rel) {
  return std::max(ha.energy_tolerance(rel), hb.energy_tolerance(rel));
}

void check_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorCode::DimMismatch, std::string(what) + ": dimension " + std::to_string(got) +
                                            " vs " + std::to_string(want));
  }
}

}  // namespace

std::vector<EnergyBlock> energy_blocks(const HamiltonianSpec& h, double tol) {
  std::vector<std::size_t> order(h.dim());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return h.level(i) < h.level(j); });
  const double abs_tol = h.energy_tolerance(tol);
  std::vector<EnergyBlock> blocks;
  double last = 0.0;
  for (std::size_t i : order) {
    if (blocks.empty() || h.level(i) - last > abs_tol) blocks.push_back({h.level(i), {}});
    blocks.back().indices.push_back(i);
    last = h.level(i);
  }
  for (auto& b : blocks) std::sort(b.indices.begin(), b.indices.end());
  return blocks;
}

ComplexMatrix pinch(const ComplexMatrix& m, const HamiltonianSpec& h, double tol) {
  check_dim(m.dim(), h.dim(), "pinch");
  ComplexMatrix out(m.dim());
  for (const auto& b : energy_blocks(h, tol))
    for (std::size_t i : b.indices)
      for (std::size_t j : b.indices) out(i, j) = m(i, j);
  return out;
}

DensityMatrix pinch(const DensityMatrix& rho, const HamiltonianSpec& h, double tol) {
  return DensityMatrix(pinch(rho.matrix(), h, tol));
}

std::vector<EnergyClass> pinch_n(const DensityMatrix& psi, int n, const HamiltonianSpec& h) {
  check_dim(psi.dim(), h.dim(), "pinch_n");
  if (!psi.is_pure()) throw Error(ErrorCode::NotProductPure, "pinch_n needs a pure single-copy state");
  return energy_classes(n, diag_of(psi), h);
}

BohrReport bohr_analysis(const HamiltonianSpec& h, double tol) {
  BohrReport r;
  const double abs_tol = h.energy_tolerance(tol);
  struct Diff {
    double d;
    BohrReport::Pair pair;
  };
  std::vector<Diff> diffs;
  for (std::size_t x = 0; x < h.dim(); ++x) {
    for (std::size_t y = 0; y < h.dim(); ++y) {
      if (x == y) continue;
      const double d = h.level(x) - h.level(y);
      if (std::abs(d) <= abs_tol) {
        if (x < y) {
          r.non_degenerate_spectrum = false;
          r.colliding_pairs.push_back({{x, y}, {x, x}});
        }
      } else if (d > 0) {
        diffs.push_back({d, {x, y}});
      }
    }
  }
  for (std::size_t i = 0; i < diffs.size(); ++i)
    for (std::size_t j = i + 1; j < diffs.size(); ++j)
      if (std::abs(diffs[i].d - diffs[j].d) <= abs_tol)
        r.colliding_pairs.push_back({diffs[i].pair, diffs[j].pair});
  r.non_degenerate_bohr = r.colliding_pairs.empty();
  return r;
}

bool relatively_nondegenerate(const HamiltonianSpec& ha, const HamiltonianSpec& hb, double tol) {
  const double abs_tol = pair_tol(ha, hb, tol);
  for (std::size_t x = 0; x < ha.dim(); ++x)
    for (std::size_t xp = 0; xp < ha.dim(); ++xp)
      for (std::size_t y = 0; y < hb.dim(); ++y)
        for (std::size_t yp = 0; yp < hb.dim(); ++yp) {
          if (x == xp && y == yp) continue;
          const double da = ha.level(x) - ha.level(xp);
          const double db = hb.level(y) - hb.level(yp);
          if (std::abs(da - db) <= abs_tol) return false;
        }
  return true;
}

bool ChoiMask::is_classical() const {
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c)
      if (allowed(r, c) && r != c) return false;
  return true;
}

bool ChoiMask::all_allowed() const {
  return std::all_of(allowed_.begin(), allowed_.end(), [](char v) { return v != 0; });
}

ChoiMask covariant_choi_pattern(const HamiltonianSpec& ha, const HamiltonianSpec& hb, double tol) {
  const double abs_tol = pair_tol(ha, hb, tol);
  ChoiMask mask(ha.dim(), hb.dim());
  const std::size_t mb = hb.dim();
  for (std::size_t r = 0; r < mask.dim(); ++r) {
    for (std::size_t c = 0; c < mask.dim(); ++c) {
      const double er = ha.level(r / mb) - hb.level(r % mb);
      const double ec = ha.level(c / mb) - hb.level(c % mb);
      mask.set(r, c, std::abs(er - ec) <= abs_tol);
    }
  }
  return mask;
}

ChoiMatrix::ChoiMatrix(ComplexMatrix j, std::size_t ma, std::size_t mb, double tol)
    : j_(std::move(j)), ma_(ma), mb_(mb) {
  if (ma == 0 || mb == 0 || j_.dim() != ma * mb) {
    throw Error(ErrorCode::InvalidChoi, "Choi matrix dimension does not match m_A * m_B");
  }
  const double scale = std::max(1.0, j_.max_abs());
  if (!j_.is_hermitian(tol)) throw Error(ErrorCode::InvalidChoi, "Choi matrix not Hermitian");
  if (!is_psd(j_, tol)) throw Error(ErrorCode::InvalidChoi, "Choi matrix not PSD");
  for (std::size_t x = 0; x < ma; ++x) {
    for (std::size_t xp = 0; xp < ma; ++xp) {
      cplx t = 0.0;
      for (std::size_t y = 0; y < mb; ++y) t += j_(x * mb + y, xp * mb + y);
      if (std::abs(t - cplx(x == xp ? 1.0 : 0.0)) > tol * scale) {
        throw Error(ErrorCode::InvalidChoi, "partial trace over the output is not the identity");
      }
    }
  }
  j_ = j_.hermitian_part();
}

ChoiMatrix choi_of(const LinearMap& channel, std::size_t ma, std::size_t mb) {
  ComplexMatrix j(ma * mb);
  for (std::size_t x = 0; x < ma; ++x) {
    for (std::size_t xp = 0; xp < ma; ++xp) {
      ComplexMatrix e(ma);
      e(x, xp) = 1.0;
      const ComplexMatrix out = channel(e);
      check_dim(out.dim(), mb, "channel output");
      for (std::size_t y = 0; y < mb; ++y)
        for (std::size_t yp = 0; yp < mb; ++yp) j(x * mb + y, xp * mb + yp) = out(y, yp);
    }
  }
  return ChoiMatrix(std::move(j), ma, mb);
}

ComplexMatrix apply_channel(const ChoiMatrix& j, const ComplexMatrix& rho) {
  check_dim(rho.dim(), j.dim_a(), "channel input");
  const std::size_t ma = j.dim_a(), mb = j.dim_b();
  ComplexMatrix out(mb);
  for (std::size_t x = 0; x < ma; ++x)
    for (std::size_t xp = 0; xp < ma; ++xp) {
      const cplx r = rho(x, xp);
      if (r == cplx(0.0)) continue;
      for (std::size_t y = 0; y < mb; ++y)
        for (std::size_t yp = 0; yp < mb; ++yp) out(y, yp) += r * j.matrix()(x * mb + y, xp * mb + yp);
    }
  return out;
}

double covariance_violation(const ChoiMatrix& j, const HamiltonianSpec& ha, const HamiltonianSpec& hb,
                            double energy_tol) {
  check_dim(ha.dim(), j.dim_a(), "input Hamiltonian");
  check_dim(hb.dim(), j.dim_b(), "output Hamiltonian");
  const ChoiMask mask = covariant_choi_pattern(ha, hb, energy_tol);
  double worst = 0.0;
  for (std::size_t r = 0; r < mask.dim(); ++r)
    for (std::size_t c = 0; c < mask.dim(); ++c)
      if (!mask.allowed(r, c)) worst = std::max(worst, std::abs(j.matrix()(r, c)));
  return worst;
}

bool is_covariant(const ChoiMatrix& j, const HamiltonianSpec& ha, const HamiltonianSpec& hb,
                  double tol, double energy_tol) {
  return covariance_violation(j, ha, hb, energy_tol) <= tol;
}

std::pair<ProbVector, ProbVector> joint_classical_spectrum(const DensityMatrix& rho,
                                                           const HamiltonianSpec& h,
                                                           const ProbVector& gibbs) {
  check_dim(rho.dim(), h.dim(), "joint spectrum");
  check_dim(gibbs.dim(), h.dim(), "joint spectrum Gibbs");
  std::vector<double> p, g;
  for (const auto& b : energy_blocks(h)) {
    const std::size_t k = b.indices.size();
    ComplexMatrix block(k);
    double gw = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      gw += gibbs[b.indices[i]];
      for (std::size_t j = 0; j < k; ++j) block(i, j) = rho(b.indices[i], b.indices[j]);
    }
    gw /= static_cast<double>(k);
    for (double v : eigvalsh(block)) {
      p.push_back(std::max(v, 0.0));
      g.push_back(gw);
    }
  }
  return {ProbVector::normalized(std::move(p)), ProbVector::normalized(std::move(g))};
}

bool is_quasi_classical(const DensityMatrix& rho, const HamiltonianSpec& h, double tol) {
  const ComplexMatrix d = rho.matrix() - pinch(rho.matrix(), h);
  return d.max_abs() <= tol;
}

}  // namespace athermal
