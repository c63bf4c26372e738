#include "athermal/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "athermal/errors.hpp"

namespace athermal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_dims(std::size_t m, const ProbVector& p, const HamiltonianSpec& h) {
  if (p.dim() != m || h.dim() != m) {
    throw Error(ErrorCode::DimMismatch, "amplitude/Hamiltonian dimensions disagree");
  }
}

void visit_types(std::vector<int>& counts, std::size_t pos, int remaining,
                 const std::function<void(const TypeVector&)>& visit) {
  if (pos + 1 == counts.size()) {
    counts[pos] = remaining;
    visit(TypeVector(counts));
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    counts[pos] = c;
    visit_types(counts, pos + 1, remaining - c, visit);
  }
}

double default_energy_tol(int n, const HamiltonianSpec& h) { return 1e-9 * n * h.max_level(); }

// Energy-sorted (energy, weight) pairs merged whenever consecutive energies
// are within tol (connected components of the tolerance relation).
std::vector<EnergyClass> group_by_energy(std::vector<std::pair<double, double>> items, double tol) {
  std::sort(items.begin(), items.end());
  std::vector<EnergyClass> classes;
  double last = 0.0;
  for (const auto& [e, w] : items) {
    if (classes.empty() || e - last > tol) {
      classes.push_back({e, 0.0, 0});
    }
    classes.back().weight += w;
    classes.back().type_count += 1;
    last = e;
  }
  return classes;
}

}  // namespace

TypeVector::TypeVector(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw Error(ErrorCode::InvalidState, "type over an empty alphabet");
  for (int c : counts_) {
    if (c < 0) throw Error(ErrorCode::InvalidState, "negative type count");
    n_ += c;
  }
}

std::vector<double> TypeVector::probabilities() const {
  std::vector<double> t(counts_.size());
  for (std::size_t x = 0; x < counts_.size(); ++x)
    t[x] = n_ == 0 ? 0.0 : static_cast<double>(counts_[x]) / n_;
  return t;
}

double type_count(int n, int m) {
  return std::round(std::exp(std::lgamma(n + m) - std::lgamma(n + 1.0) - std::lgamma(m * 1.0)));
}

void for_each_type(int n, int m, const std::function<void(const TypeVector&)>& visit) {
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidState, "types need n >= 1 and m >= 1");
  if (type_count(n, m) > kMaxTypeCount) {
    throw Error(ErrorCode::TooLarge, "Type(" + std::to_string(n) + "," + std::to_string(m) +
                                         ") has more than 1e7 elements");
  }
  std::vector<int> counts(static_cast<std::size_t>(m), 0);
  visit_types(counts, 0, n, visit);
}

std::vector<TypeVector> enumerate_types(int n, int m) {
  std::vector<TypeVector> out;
  for_each_type(n, m, [&](const TypeVector& t) { out.push_back(t); });
  return out;
}

double multinomial_log(const TypeVector& t) {
  double v = log2_factorial(t.n());
  for (int c : t.counts()) v -= log2_factorial(c);
  return std::max(v, 0.0);
}

double type_weight_log(const TypeVector& t, const ProbVector& p) {
  if (t.m() != p.dim()) throw Error(ErrorCode::DimMismatch, "type and distribution dims differ");
  double v = multinomial_log(t);
  for (std::size_t x = 0; x < t.m(); ++x) {
    if (t.count(x) == 0) continue;
    if (p[x] <= 0.0) return kNegInf;
    v += t.count(x) * std::log2(p[x]);
  }
  return v;
}

double type_energy(const TypeVector& t, const HamiltonianSpec& h) {
  if (t.m() != h.dim()) throw Error(ErrorCode::DimMismatch, "type and Hamiltonian dims differ");
  double e = 0.0;
  for (std::size_t x = 0; x < t.m(); ++x) e += t.count(x) * h.level(x);
  return e;
}

double type_distance(const TypeVector& t, const ProbVector& p) {
  if (t.m() != p.dim()) throw Error(ErrorCode::DimMismatch, "type and distribution dims differ");
  double d = 0.0;
  for (std::size_t x = 0; x < t.m(); ++x)
    d += std::abs(static_cast<double>(t.count(x)) / t.n() - p[x]);
  return 0.5 * d;
}

std::vector<TypeVector> typical_set(int n, double eps, const ProbVector& p) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidState, "typical set needs eps > 0");
  std::vector<TypeVector> out;
  for_each_type(n, static_cast<int>(p.dim()), [&](const TypeVector& t) {
    if (type_distance(t, p) <= eps + 1e-12) out.push_back(t);
  });
  return out;
}

TailMass tail_mass_and_bound(int n, double eps, const ProbVector& p) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidState, "tail mass needs eps > 0");
  std::vector<double> outside;
  for_each_type(n, static_cast<int>(p.dim()), [&](const TypeVector& t) {
    if (type_distance(t, p) > eps + 1e-12) outside.push_back(type_weight_log(t, p));
  });
  const double m = static_cast<double>(p.dim());
  const double bound = std::exp2(-2.0 * n * eps * eps + m * std::log2(n + 1.0));
  return {outside.empty() ? 0.0 : std::exp2(log2_sum_exp2(outside)), bound};
}

TypedSpectrum typed_spectrum(int n, const ProbVector& p, const HamiltonianSpec& h) {
  check_dims(p.dim(), p, h);
  TypedSpectrum s;
  s.n = n;
  std::vector<double> logs;
  for_each_type(n, static_cast<int>(p.dim()), [&](const TypeVector& t) {
    const double lw = type_weight_log(t, p);
    if (lw == kNegInf) return;
    s.entries.push_back({t, lw, type_energy(t, h)});
    logs.push_back(lw);
  });
  s.log_mass = log2_sum_exp2(logs);
  return s;
}

ChiState chi_state(int n, double alpha, const ProbVector& p, const HamiltonianSpec& h) {
  check_dims(p.dim(), p, h);
  if (!(alpha > 0.5 && alpha < 1.0)) throw Error(ErrorCode::InvalidState, "alpha must lie in (1/2, 1)");
  ChiState chi;
  chi.eps = std::pow(static_cast<double>(n), alpha - 1.0);
  chi.spectrum.n = n;
  std::vector<double> kept, dropped;
  for_each_type(n, static_cast<int>(p.dim()), [&](const TypeVector& t) {
    const double lw = type_weight_log(t, p);
    if (lw == kNegInf) return;
    if (type_distance(t, p) <= chi.eps + 1e-12) {
      chi.spectrum.entries.push_back({t, lw, type_energy(t, h)});
      kept.push_back(lw);
    } else {
      dropped.push_back(lw);
    }
  });
  if (kept.empty()) {
    throw Error(ErrorCode::EmptyTypicalSet,
                "no type within " + std::to_string(chi.eps) + " of p at n = " + std::to_string(n));
  }
  const double log_nu = log2_sum_exp2(kept);
  chi.spectrum.log_mass = log_nu;
  for (auto& e : chi.spectrum.entries) e.log_weight -= log_nu;
  chi.retained_mass = std::exp2(log_nu);
  chi.tail = dropped.empty() ? 0.0 : std::exp2(log2_sum_exp2(dropped));
  const auto [lo, hi] = std::minmax_element(
      chi.spectrum.entries.begin(), chi.spectrum.entries.end(),
      [](const TypedEntry& a, const TypedEntry& b) { return a.energy < b.energy; });
  chi.energy_spread = hi->energy - lo->energy;
  chi.spread_bound = 4.0 * std::pow(static_cast<double>(n), alpha) * h.sum_levels();
  // Both states are pure: 1/2||psi - chi||_1 = sqrt(1 - |<psi|chi>|^2) = sqrt(1 - nu).
  chi.trace_distance = std::sqrt(std::max(0.0, chi.tail));
  return chi;
}

TypeVector min_energy_type(const std::vector<TypeVector>& retained, const HamiltonianSpec& h,
                           const ProbVector& g, bool* tie) {
  if (retained.empty()) throw Error(ErrorCode::EmptyTypicalSet, "no retained types");
  double emin = std::numeric_limits<double>::infinity();
  for (const auto& t : retained) emin = std::min(emin, type_energy(t, h));
  const double tol = default_energy_tol(retained.front().n(), h);
  auto cost = [&](const TypeVector& t) {
    double c = 0.0;
    for (std::size_t x = 0; x < t.m(); ++x) {
      if (t.count(x) == 0) continue;
      if (g[x] <= 0.0) return std::numeric_limits<double>::infinity();
      c -= t.count(x) * std::log2(g[x]);
    }
    return c;
  };
  const TypeVector* best = nullptr;
  double best_cost = 0.0;
  std::size_t at_min = 0;
  for (const auto& t : retained) {
    if (type_energy(t, h) - emin > tol) continue;
    ++at_min;
    const double c = cost(t);
    if (best == nullptr || c < best_cost || (c == best_cost && t < *best)) {
      best = &t;
      best_cost = c;
    }
  }
  if (tie != nullptr) *tie = at_min > 1;
  return *best;
}

SlarSpec slar_reference(int n, double alpha, const ProbVector& p, const HamiltonianSpec& h) {
  const ChiState chi = chi_state(n, alpha, p, h);
  auto entries = chi.spectrum.entries;
  std::stable_sort(entries.begin(), entries.end(), [](const TypedEntry& a, const TypedEntry& b) {
    return a.energy < b.energy || (a.energy == b.energy && a.type < b.type);
  });
  SlarSpec spec;
  spec.n = n;
  spec.alpha = alpha;
  const double mu1 = entries.front().energy;
  std::vector<double> weights;
  std::vector<TypeVector> retained;
  for (const auto& e : entries) {
    spec.levels.push_back(e.energy - mu1);
    spec.level_types.push_back(e.type);
    weights.push_back(std::exp2(e.log_weight));
    retained.push_back(e.type);
  }
  spec.phi_weights = ProbVector::normalized(std::move(weights));
  // Gibbs weights of equal-energy sequences coincide, so any tie-break gives
  // the same <z|gamma|z>; take the lexicographically smallest.
  spec.z_type = min_energy_type(retained, h, ProbVector::uniform(h.dim()), &spec.min_energy_tie);
  const double n_alpha = std::pow(static_cast<double>(n), alpha);
  spec.c_bound = 4.0 * h.sum_levels();
  spec.tight_bound = 2.0 * n_alpha * h.sum_levels();
  spec.bound_holds = spec.levels.back() <= spec.c_bound * n_alpha * (1.0 + 1e-12) + 1e-12;
  return spec;
}

EnergyHistograms slar_energy_histograms(const SlarSpec& spec, const ChiState& chi,
                                        const HamiltonianSpec& h) {
  EnergyHistograms out;
  const double mu1 = type_energy(spec.z_type, h);
  for (std::size_t j = 0; j < spec.levels.size(); ++j) {
    out.reference_with_z.emplace_back(spec.levels[j] + mu1, spec.phi_weights[j]);
  }
  for (const auto& e : chi.spectrum.entries) {
    out.ground_with_chi.emplace_back(e.energy, std::exp2(e.log_weight));
  }
  std::sort(out.reference_with_z.begin(), out.reference_with_z.end());
  std::sort(out.ground_with_chi.begin(), out.ground_with_chi.end());
  return out;
}

SlarBudget slar_budget(const SlarSpec& spec, double beta) {
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidState, "beta must be positive");
  const double max_lambda = spec.levels.empty() ? 0.0 : spec.levels.back();
  return {beta * max_lambda, beta * spec.c_bound * std::pow(static_cast<double>(spec.n), spec.alpha)};
}

double pure_cost_per_copy(int n, double alpha, const ProbVector& p, const ProbVector& g,
                          const HamiltonianSpec& h) {
  check_dims(p.dim(), p, h);
  if (g.dim() != p.dim()) throw Error(ErrorCode::DimMismatch, "Gibbs vector dim");
  for (std::size_t x = 0; x < p.dim(); ++x) {
    if (p[x] > 0.0 && g[x] <= 0.0) {
      throw Error(ErrorCode::SupportViolation, "Gibbs weight vanishes on the support of p");
    }
  }
  const ChiState chi = chi_state(n, alpha, p, h);
  std::vector<TypeVector> retained;
  retained.reserve(chi.spectrum.entries.size());
  for (const auto& e : chi.spectrum.entries) retained.push_back(e.type);
  const TypeVector z = min_energy_type(retained, h, g);
  double cost = 0.0;
  for (std::size_t x = 0; x < z.m(); ++x) {
    if (z.count(x) == 0) continue;
    cost -= static_cast<double>(z.count(x)) / n * std::log2(g[x]);
  }
  return cost;
}

std::vector<EnergyClass> energy_classes(int n, const ProbVector& p, const HamiltonianSpec& h,
                                        double energy_tol) {
  check_dims(p.dim(), p, h);
  if (energy_tol <= 0.0) energy_tol = default_energy_tol(n, h);
  std::vector<std::pair<double, double>> items;
  for_each_type(n, static_cast<int>(p.dim()), [&](const TypeVector& t) {
    const double lw = type_weight_log(t, p);
    if (lw == kNegInf) return;
    items.emplace_back(type_energy(t, h), std::exp2(lw));
  });
  return group_by_energy(std::move(items), energy_tol);
}

DistillRate distill_rate_estimate(int n, const ProbVector& p, const ProbVector& g,
                                  const HamiltonianSpec& h, double energy_tol) {
  check_dims(p.dim(), p, h);
  if (g.dim() != p.dim()) throw Error(ErrorCode::DimMismatch, "Gibbs vector dim");
  if (energy_tol <= 0.0) energy_tol = default_energy_tol(n, h);
  std::vector<std::pair<double, double>> items;
  double cross = 0.0;
  for_each_type(n, static_cast<int>(p.dim()), [&](const TypeVector& t) {
    const double lw = type_weight_log(t, p);
    if (lw == kNegInf) return;
    const double r = std::exp2(lw);
    items.emplace_back(type_energy(t, h), r);
    double log_g = 0.0;
    for (std::size_t x = 0; x < t.m(); ++x) {
      if (t.count(x) == 0) continue;
      if (g[x] <= 0.0) throw Error(ErrorCode::SupportViolation, "Gibbs weight vanishes on supp p");
      log_g += t.count(x) * std::log2(g[x]);
    }
    cross += r * log_g;
  });
  const auto classes = group_by_energy(std::move(items), energy_tol);
  std::vector<double> w;
  w.reserve(classes.size());
  for (const auto& c : classes) w.push_back(c.weight);
  const double h_pinched = shannon_entropy(w);
  return {(-h_pinched - cross) / n, h_pinched, cross};
}

CoherenceGrowth coherence_growth(int n, const ProbVector& p, const HamiltonianSpec& h,
                                 double energy_tol) {
  const auto classes = energy_classes(n, p, h, energy_tol);
  std::vector<double> w;
  for (const auto& c : classes) w.push_back(c.weight);
  return {shannon_entropy(w), static_cast<double>(p.dim()) * std::log2(n + 1.0)};
}

}  // namespace athermal
