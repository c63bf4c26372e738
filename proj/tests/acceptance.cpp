// Acceptance gate. Run with no argument for every criterion or with a
// criterion number (1-13). One PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "athermal/conversion.hpp"
#include "athermal/divergences.hpp"
#include "athermal/errors.hpp"
#include "athermal/symmetry.hpp"
#include "athermal/types.hpp"
#include "random_states.hpp"

using namespace athermal;
namespace ts = athermal::testing;

namespace {

struct Result {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Qubit used by the asymptotic criteria: psi = (1/sqrt2, 1/sqrt2) with
// Gibbs state (2/3, 1/3) at beta = 1.
struct HalfQubit {
  ProbVector p{std::vector<double>{0.5, 0.5}};
  HamiltonianSpec h{std::vector<double>{0.0, std::log(2.0)}};
  ProbVector g = gibbs_state(h, 1.0);
  double divergence() const {
    const double s = std::sqrt(0.5);
    const DensityMatrix psi = DensityMatrix::pure(std::vector<cplx>{s, s});
    return relative_entropy(psi, DensityMatrix::diagonal(g)).value;
  }
};

// ---------------------------------------------------------------------------

Result qubit_threshold() {
  const double s = 1.0 / 3.0, b = std::sqrt(2.0) / 6.0, g = 1.0 / 3.0, r = 0.5;
  auto feasible = [&](double a) { return qubit_gpc_criterion({r, a, s, b, g}).feasible(); };
  // Coarse grid then bisection on the first infeasible -> feasible change.
  double lo = std::numeric_limits<double>::quiet_NaN(), hi = lo;
  bool prev = feasible(0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double a = i / 1000.0;
    const bool f = feasible(a);
    if (!prev && f) {
      lo = (i - 1) / 1000.0;
      hi = a;
      break;
    }
    prev = f;
  }
  if (std::isnan(hi)) return {false, "no infeasible-to-feasible transition on [0, 1]"};
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  // The state-level entry point agrees on both sides of the threshold.
  const ProbVector gamma({g, 1.0 - g});
  const DensityMatrix sigma = ts::qubit(s, b);
  const bool at = gpc_convertible_qubit(ts::qubit(r, 0.5), sigma, gamma).feasible();
  const bool below = gpc_convertible_qubit(ts::qubit(r, 0.5 - 1e-6), sigma, gamma).feasible();
  const double err = std::abs(hi - 0.5);
  return {err <= 1e-9 && at && !below,
          fmt("a* = %.15f, |a* - 0.5| = %.2e, state-level at/below = %d/%d", hi, err, at, below)};
}

Result solver_vs_closed_form() {
  GpcOptions pure_dykstra;
  pure_dykstra.lp_warm_start = false;
  int compared = 0, iterated = 0, banded = 0, disagree = 0, not_found = 0, feasible = 0, bad_witness = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto inst = ts::random_qubit_instance();
    const ConversionVerdict exact = gpc_convertible_qubit(inst.rho, inst.sigma, inst.gamma);
    const ConversionVerdict it = gpc_feasible(inst.rho, inst.sigma, inst.gamma, inst.h, pure_dykstra);
    if (std::abs(exact.margin) <= 1e-6) {
      ++banded;
      std::printf("  band: instance %d margin %.3e closed=%s solver=%s\n", i, exact.margin,
                  std::string(to_string(exact.decision)).c_str(), std::string(to_string(it.decision)).c_str());
      continue;
    }
    ++compared;
    if (it.iterations > 0) ++iterated;
    if (it.decision == Decision::NotFoundWithinBudget) ++not_found;
    if (it.decision != exact.decision) {
      ++disagree;
      std::printf("  disagreement: instance %d r=%.17g a=%.17g s=%.17g b=%.17g g=%.17g margin %.3e closed=%s solver=%s\n",
                  i, inst.rho(0, 0).real(), inst.rho(0, 1).real(), inst.sigma(0, 0).real(), inst.sigma(0, 1).real(),
                  inst.gamma[0], exact.margin, std::string(to_string(exact.decision)).c_str(),
                  std::string(to_string(it.decision)).c_str());
    }
    if (it.feasible()) {
      ++feasible;
      if (!check_witness(it, inst.rho, inst.sigma, inst.h, &inst.gamma).empty()) ++bad_witness;
    }
  }
  return {disagree == 0 && bad_witness == 0,
          fmt("%d compared (%d feasible, %d decided by iteration), %d in band, %d disagreements (%d not found), %d bad witnesses",
              compared, feasible, iterated, banded, disagree, not_found, bad_witness)};
}

Result decomposition_identity() {
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t m = 2 + i % 5;
    const HamiltonianSpec h = i % 3 == 0 ? HamiltonianSpec(std::vector<double>(m, 0.0)) : ts::random_levels(m);
    const AthermalityState s(ts::random_state(m), h, ts::uniform(0.1, 3.0));
    const DensityMatrix g = s.gibbs_matrix();
    const double lhs = relative_entropy(s.state(), g).value;
    const double rhs = relative_entropy(pinch(s.state(), h), g).value + coherence(s.state(), h);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst <= 1e-9, fmt("max deviation %.2e over 500 states", worst)};
}

Result subadditivity() {
  double worst = -std::numeric_limits<double>::infinity();
  int checks = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t m1 = 1 + i % 5, m2 = 1 + (i / 5) % 5;
    const ProbVector p = ts::random_prob(m1), g = ts::random_prob(m1, 0.01);
    const ProbVector q = ts::random_prob(m2), h = ts::random_prob(m2, 0.01);
    for (double eps : {0.01, 0.1, 0.3}) {
      const double lhs = dmin_eps_classical(tensor(p, q), tensor(g, h), eps);
      const double rhs = dmin_eps_classical(p, g, eps) + dmax(q, h).value;
      worst = std::max(worst, lhs - rhs);
      ++checks;
    }
  }
  return {worst <= 1e-8, fmt("%d checks, max(lhs - rhs) = %.2e", checks, worst)};
}

// Minimum Gibbs mass over tests 1_S + lambda e_k with p-mass exactly 1 - eps.
double np_vertex_oracle(const ProbVector& p, const ProbVector& g, double eps) {
  const std::size_t m = p.dim();
  const double target = 1.0 - eps;
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    double ps = 0.0, gs = 0.0;
    for (std::size_t x = 0; x < m; ++x)
      if (mask & (1u << x)) {
        ps += p[x];
        gs += g[x];
      }
    if (ps >= target - 1e-15) best = std::min(best, gs);
    for (std::size_t k = 0; k < m; ++k) {
      if ((mask & (1u << k)) || p[k] <= 0.0) continue;
      const double lambda = (target - ps) / p[k];
      if (lambda >= 0.0 && lambda <= 1.0) best = std::min(best, gs + lambda * g[k]);
    }
  }
  return best;
}

// Grid over the first m - 1 diagonal test entries; the last entry is the
// smallest value meeting the constraint.
double np_grid_oracle(const ProbVector& p, const ProbVector& g, double eps, double step) {
  const std::size_t m = p.dim();
  const double target = 1.0 - eps;
  const int k = static_cast<int>(std::round(1.0 / step));
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx(m - 1, 0);
  while (true) {
    double ps = 0.0, gs = 0.0;
    for (std::size_t x = 0; x + 1 < m; ++x) {
      ps += idx[x] * step * p[x];
      gs += idx[x] * step * g[x];
    }
    const double need = target - ps;
    if (need <= 0.0) {
      best = std::min(best, gs);
    } else if (p[m - 1] > 0.0 && need <= p[m - 1] + 1e-14) {
      best = std::min(best, gs + std::min(1.0, need / p[m - 1]) * g[m - 1]);
    }
    std::size_t x = 0;
    while (x < idx.size() && ++idx[x] > k) idx[x++] = 0;
    if (x == idx.size()) break;
  }
  return best;
}

Result neyman_pearson() {
  double worst_exact = 0.0, worst_grid = 0.0;
  int instances = 0, grid_instances = 0;
  for (int i = 0; i < 400; ++i) {
    const std::size_t m = 1 + i % 5;
    std::vector<double> pw(m), gw(m);
    const ProbVector pr = ts::random_prob(m), gr = ts::random_prob(m);
    for (std::size_t x = 0; x < m; ++x) {
      pw[x] = pr[x];
      gw[x] = gr[x];
    }
    // Zero entries and ratio ties on some draws.
    if (m > 2 && i % 4 == 1) pw[0] = 0.0;
    if (m > 2 && i % 4 == 2) gw[1] = 0.0;
    if (m > 1 && i % 4 == 3) gw = pw;
    const ProbVector p = ProbVector::normalized(pw), g = ProbVector::normalized(gw);
    const double eps = (i % 7 == 0) ? 0.0 : ts::uniform(0.0, 0.95);
    const double got = dmin_eps_classical(p, g, eps);
    const double mass = np_vertex_oracle(p, g, eps);
    const double expected = mass > 0.0 ? -std::log2(mass) : std::numeric_limits<double>::infinity();
    ++instances;
    if (std::isinf(expected) || std::isinf(got)) {
      if (std::isinf(expected) != std::isinf(got)) worst_exact = std::numeric_limits<double>::infinity();
    } else {
      worst_exact = std::max(worst_exact, std::abs(got - expected));
    }
    if (m <= 3 && grid_instances < 60) {
      const double grid_mass = np_grid_oracle(p, g, eps, 1e-3);
      ++grid_instances;
      // Grid resolution bounds the Gibbs-mass error by step * sum g.
      worst_grid = std::max(worst_grid, std::abs(grid_mass - mass));
    }
  }
  return {worst_exact <= 1e-8 && worst_grid <= 1e-3,
          fmt("%d instances, max |value - vertex oracle| = %.2e; %d grid cross-checks, max mass gap %.2e", instances,
              worst_exact, grid_instances, worst_grid)};
}

Result golden_unit_dmax() {
  double worst = 0.0;
  for (double m : {2.0, 3.5, 10.0}) {
    const GoldenUnit u = golden_unit(m);
    const double q = dmax(DensityMatrix::diagonal(u.state), DensityMatrix::diagonal(u.gibbs)).value;
    const double c = dmax(u.state, u.gibbs).value;
    worst = std::max({worst, std::abs(q - std::log2(m)), std::abs(c - std::log2(m))});
  }
  return {worst <= 1e-12, fmt("max |D_max - log2 m| = %.2e for m in {2, 3.5, 10}", worst)};
}

Result asymptotic_distillation() {
  const HalfQubit q;
  const double d = q.divergence();
  std::vector<double> gaps;
  for (int n : {25, 50, 100, 200}) gaps.push_back(std::abs(distill_rate_estimate(n, q.p, q.g, q.h).value - d));
  const double bound = 2.0 * std::log2(201.0) / 200.0;
  bool monotone = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) monotone = monotone && gaps[i] <= gaps[i - 1];
  return {gaps.back() <= bound && monotone,
          fmt("D = %.6f, gaps n=25..200: %.4f %.4f %.4f %.4f, bound %.4f, monotone %d", d, gaps[0], gaps[1], gaps[2],
              gaps[3], bound, monotone)};
}

Result pure_cost() {
  const HalfQubit q;
  const double d = q.divergence();
  const double c = pure_cost_per_copy(10000, 0.75, q.p, q.g, q.h);
  const double gap = std::abs(c - d);
  return {gap <= 0.05, fmt("cost per copy %.6f, D = %.6f, gap %.4f (tolerance 0.05)", c, d, gap)};
}

Result tail_bound() {
  const ProbVector p({0.5, 0.5});
  double worst_ratio = 0.0;
  int worst_n = 0;
  bool ok = true;
  for (int n = 1; n <= 500; ++n) {
    const TailMass t = tail_mass_and_bound(n, 0.1, p);
    const double bound = std::pow(2.0, -2.0 * n * 0.01) * (n + 1.0) * (n + 1.0);
    if (std::abs(t.bound - bound) > 1e-12 * bound) ok = false;
    if (t.tail > bound) ok = false;
    if (t.tail / bound > worst_ratio) {
      worst_ratio = t.tail / bound;
      worst_n = n;
    }
  }
  return {ok, fmt("n = 1..500, max tail/bound = %.3e at n = %d", worst_ratio, worst_n)};
}

// H of the energy-class weights of psi^{(x)n}, from the full amplitude vector.
double coherence_state_vector(const std::vector<cplx>& ket, const HamiltonianSpec& h, int n) {
  const std::size_t m = ket.size();
  std::vector<cplx> amp{1.0};
  std::vector<double> level{0.0};
  for (int k = 0; k < n; ++k) {
    std::vector<cplx> na(amp.size() * m);
    std::vector<double> nl(amp.size() * m);
    for (std::size_t i = 0; i < amp.size(); ++i)
      for (std::size_t x = 0; x < m; ++x) {
        na[i * m + x] = amp[i] * ket[x];
        nl[i * m + x] = level[i] + h.level(x);
      }
    amp = std::move(na);
    level = std::move(nl);
  }
  // A pure state pinches to one rank-one block per energy.
  std::vector<double> w;
  for (const auto& b : energy_blocks(HamiltonianSpec(level))) {
    double s = 0.0;
    for (std::size_t i : b.indices) s += std::norm(amp[i]);
    w.push_back(s);
  }
  return shannon_entropy(w);
}

double coherence_dense(const std::vector<cplx>& ket, const HamiltonianSpec& h, int n) {
  DensityMatrix rho = DensityMatrix::pure(ket);
  HamiltonianSpec hn = h;
  for (int k = 1; k < n; ++k) {
    rho = DensityMatrix(kron(rho.matrix(), DensityMatrix::pure(ket).matrix()).hermitian_part());
    hn = tensor(hn, h);
  }
  return coherence(rho, hn);
}

Result coherence_growth_check() {
  struct Case {
    std::vector<cplx> ket;
    HamiltonianSpec h;
  };
  const double s = std::sqrt(0.5);
  std::vector<Case> cases{
      {{s, s}, HamiltonianSpec({0.0, 1.0})},
      {{std::sqrt(0.2), std::sqrt(0.3), cplx(0.0, std::sqrt(0.5))}, HamiltonianSpec({0.0, 1.0, 2.0})},
      {{std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)}, HamiltonianSpec({0.0, 1.0, std::sqrt(2.0)})},
  };
  bool bound_ok = true;
  double worst_bound_slack = std::numeric_limits<double>::infinity();
  double worst_match = 0.0;
  int dense_checks = 0;
  for (const auto& c : cases) {
    const ProbVector p = diag_of(DensityMatrix::pure(c.ket));
    const double m = static_cast<double>(c.ket.size());
    for (int n = 1; n <= 200; ++n) {
      const CoherenceGrowth g = coherence_growth(n, p, c.h);
      const double bound = m * std::log2(n + 1.0);
      if (g.value > bound + 1e-12) bound_ok = false;
      worst_bound_slack = std::min(worst_bound_slack, bound - g.value);
    }
    for (int n = 1; n <= 14; ++n) {
      const double types_value = coherence_growth(n, p, c.h).value;
      const double direct = std::pow(m, n) <= 81.0 ? coherence_dense(c.ket, c.h, n) : coherence_state_vector(c.ket, c.h, n);
      worst_match = std::max(worst_match, std::abs(types_value - direct));
      ++dense_checks;
    }
  }
  return {bound_ok && worst_match <= 1e-8,
          fmt("bound holds %d (min slack %.3f); %d direct comparisons n <= 14, max deviation %.2e", bound_ok,
              worst_bound_slack, dense_checks, worst_match)};
}

Result energy_spread() {
  const HalfQubit q;
  bool ok = true;
  std::ostringstream os;
  for (double alpha : {0.6, 0.75}) {
    double prev = std::numeric_limits<double>::infinity();
    os << "alpha " << alpha << ": ";
    for (int n : {100, 1000, 10000}) {
      const ChiState chi = chi_state(n, alpha, q.p, q.h);
      const double limit = 4.0 * std::pow(n, alpha) * q.h.sum_levels();
      if (chi.energy_spread > limit) ok = false;
      const SlarBudget b = slar_budget(slar_reference(n, alpha, q.p, q.h), 1.0);
      const double per_copy = b.dmax_bound / n;
      if (!(per_copy < prev)) ok = false;
      prev = per_copy;
      os << fmt("n=%d spread %.2f/%.2f budget/n %.4f; ", n, chi.energy_spread, limit, per_copy);
    }
  }
  return {ok, os.str()};
}

Result majorization_vs_lp() {
  int agree = 0, disagree = 0, banded = 0, bad_map = 0, positive = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t m = 1 + i % 4, n = 1 + (i / 4) % 4;
    const ProbVector p = ts::random_prob(m), g = ts::random_prob(m, 0.05);
    ProbVector q = ts::random_prob(n), h = ts::random_prob(n, 0.05);
    if (i % 2 == 0) {
      const RealMatrix e = ts::random_stochastic(n, m);
      q = ProbVector::normalized(e.apply(p.weights()));
      h = ProbVector::normalized(e.apply(g.weights()));
    }
    const double margin = relative_majorization_margin(p, g, q, h);
    const auto e = find_stochastic_map(p, g, q, h);
    // Majorized instances sit at margin 0; only strictly negative margins
    // near zero are knife-edge.
    if (margin < -1e-12 && margin > -1e-8) ++banded;
    if (relative_majorization(p, g, q, h, 1e-8) == e.has_value()) {
      ++agree;
    } else {
      ++disagree;
    }
    if (e) {
      ++positive;
      const auto ep = e->apply(p.weights()), eg = e->apply(g.weights());
      for (std::size_t y = 0; y < n; ++y)
        if (std::abs(ep[y] - q[y]) > 1e-8 || std::abs(eg[y] - h[y]) > 1e-8) ++bad_map;
    }
  }
  return {disagree == 0 && bad_map == 0,
          fmt("%d agree (%d majorized), %d disagree, %d with margin in (-1e-8, -1e-12), %d bad LP maps", agree, positive,
              disagree, banded, bad_map)};
}

Result pure_parent_soundness() {
  int feasible = 0, covariant = 0, psd = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = 2 + i % 4;
    const HamiltonianSpec h = ts::random_levels(m);
    const DensityMatrix sigma = ts::random_state(m);
    const DensityMatrix psi = DensityMatrix::pure(pure_parent(sigma));
    const ConversionVerdict v = covariant_convertible(psi, sigma, h);
    if (!v.feasible() || !v.witness_P || !v.witness_Q) continue;
    ++feasible;
    const ComplexMatrix j = witness_choi(*v.witness_P, *v.witness_Q);
    if (is_psd(j, 1e-8)) ++psd;
    try {
      if (is_covariant(ChoiMatrix(j, m, m, 1e-8), h, h, 1e-8)) ++covariant;
    } catch (const Error&) {
    }
  }
  return {feasible == 200 && covariant == 200 && psd == 200,
          fmt("%d/200 feasible, %d covariant, %d PSD", feasible, covariant, psd)};
}

struct Criterion {
  const char* name;
  std::function<Result()> run;
  double time_limit_s;  // <= 0: no runtime requirement
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"qubit example threshold", qubit_threshold, 1.0},
      {"Dykstra solver vs qubit closed form", solver_vs_closed_form, 30.0},
      {"relative entropy decomposition", decomposition_identity, 0.0},
      {"classical weak subadditivity", subadditivity, 0.0},
      {"Neyman-Pearson exactness", neyman_pearson, 0.0},
      {"D_max of the golden unit", golden_unit_dmax, 0.0},
      {"asymptotic distillation rate", asymptotic_distillation, 5.0},
      {"pure-state cost per copy", pure_cost, 10.0},
      {"typical-set tail bound", tail_bound, 0.0},
      {"coherence growth", coherence_growth_check, 0.0},
      {"energy spread and reference budget", energy_spread, 0.0},
      {"relative majorization vs LP", majorization_vs_lp, 0.0},
      {"pure-parent soundness", pure_parent_soundness, 0.0},
  };
  return all;
}

bool run_one(std::size_t index) {
  const Criterion& c = criteria()[index];
  const auto t0 = std::chrono::steady_clock::now();
  Result r;
  try {
    r = c.run();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = r.pass;
  std::string timing = fmt("%.3f s", secs);
  if (c.time_limit_s > 0.0) {
    timing += fmt(" / limit %.0f s", c.time_limit_s);
    if (secs >= c.time_limit_s) pass = false;
  }
  std::printf("%s [%02zu] %s: %s (%s)\n", pass ? "PASS" : "FAIL", index + 1, c.name, r.detail.c_str(),
              timing.c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t total = criteria().size();
  if (argc > 1) {
    const long k = std::strtol(argv[1], nullptr, 10);
    if (k < 1 || static_cast<std::size_t>(k) > total) {
      std::fprintf(stderr, "criterion must be between 1 and %zu\n", total);
      return 2;
    }
    return run_one(static_cast<std::size_t>(k - 1)) ? 0 : 1;
  }
  int failed = 0;
  for (std::size_t i = 0; i < total; ++i) failed += run_one(i) ? 0 : 1;
  std::printf("%zu/%zu criteria passed\n", total - failed, total);
  return failed == 0 ? 0 : 1;
}
