#include "athermal/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "athermal/conversion.hpp"
#include "athermal/divergences.hpp"
#include "athermal/errors.hpp"
#include "athermal/state_io.hpp"
#include "athermal/symmetry.hpp"
#include "athermal/types.hpp"

namespace athermal::cli {

using nlohmann::json;

namespace {

struct Emitted {
  json doc;
  std::string csv;
  int status = kExitFeasible;
};

void need_inputs(const RunConfig& c, std::size_t k) {
  if (c.inputs.size() != k) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(k) + " input file(s), got " +
                                           std::to_string(c.inputs.size()));
  }
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? json("inf") : json("-inf");
}

int verdict_status(const ConversionVerdict& v) {
  switch (v.decision) {
    case Decision::Feasible: return kExitFeasible;
    case Decision::Infeasible: return kExitInfeasible;
    case Decision::NotFoundWithinBudget: return kExitNotFound;
  }
  return kExitNotFound;
}

Emitted emit_verdict(const ConversionVerdict& v, const std::string& check) {
  Emitted e;
  e.doc["decision"] = std::string(to_string(v.decision));
  e.doc["margin"] = number(v.margin);
  e.doc["criterion"] = v.criterion;
  e.doc["diagnostics"] = v.diagnostics;
  if (v.iterations > 0) e.doc["iterations"] = v.iterations;
  if (v.witness_Q) e.doc["witness_Q"] = to_json(*v.witness_Q);
  if (v.witness_P) e.doc["witness_P"] = to_json(*v.witness_P);
  if (v.feasible()) e.doc["witness_check"] = check.empty() ? "ok" : check;
  std::ostringstream os;
  os << std::setprecision(17) << "decision,margin,criterion\n"
     << to_string(v.decision) << ',' << v.margin << ',' << v.criterion << '\n';
  e.csv = os.str();
  e.status = verdict_status(v);
  return e;
}

AthermalityState load(const RunConfig& c, std::size_t i) {
  AthermalityState s = load_state(c.inputs.at(i));
  if (c.beta > 0.0 && c.beta != s.beta()) return AthermalityState(s.state(), s.hamiltonian(), c.beta);
  return s;
}

void require_same_system(const AthermalityState& a, const AthermalityState& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "states live on different dimensions");
  if (a.beta() != b.beta()) throw Error(ErrorCode::BetaMismatch, "states use different beta");
  for (std::size_t x = 0; x < a.dim(); ++x) {
    if (std::abs(a.hamiltonian().level(x) - b.hamiltonian().level(x)) > a.hamiltonian().energy_tolerance()) {
      throw Error(ErrorCode::DimMismatch, "states use different Hamiltonians");
    }
  }
}

Emitted convert_check(const RunConfig& c) {
  need_inputs(c, 2);
  const AthermalityState a = load(c, 0), b = load(c, 1);
  require_same_system(a, b);
  const ProbVector g = a.gibbs();
  ConversionVerdict v;
  const ProbVector* gamma = nullptr;
  if (c.method == "covariant") {
    v = covariant_convertible(a.state(), b.state(), a.hamiltonian());
  } else if (c.method == "gpc") {
    GpcOptions opt;
    opt.budget = c.budget;
    opt.residual_tol = c.tol;
    v = gpc_feasible(a.state(), b.state(), g, a.hamiltonian(), opt);
    gamma = &g;
  } else if (c.method == "same-diagonal") {
    v = same_diagonal_gpc(a.state(), b.state(), a.hamiltonian());
    gamma = &g;
  } else {
    throw Error(ErrorCode::ParseError, "unknown method '" + c.method + "'");
  }
  std::string check;
  if (v.feasible()) check = check_witness(v, a.state(), b.state(), a.hamiltonian(), gamma);
  return emit_verdict(v, check);
}

Emitted qubit_gpc(const RunConfig& c) {
  need_inputs(c, 2);
  const AthermalityState a = load(c, 0), b = load(c, 1);
  require_same_system(a, b);
  const ProbVector g = a.gibbs();
  if (!c.sweep) {
    const ConversionVerdict v = gpc_convertible_qubit(a.state(), b.state(), g);
    std::string check;
    if (v.feasible() && v.witness_P && v.witness_Q && std::abs(g[0] - 0.5) > 1e-12) {
      check = check_witness(v, a.state(), b.state(), a.hamiltonian(), &g);
    }
    return emit_verdict(v, check);
  }
  if (a.dim() != 2) throw Error(ErrorCode::DimNot2, "qubit sweep needs qubit states");
  // Sweep |a| over [0, 1] with the source diagonal and the target fixed.
  QubitParams qp{a.state()(0, 0).real(), 0.0, b.state()(0, 0).real(), b.state()(0, 1), g[0]};
  auto decide = [&](double amp) {
    QubitParams p = qp;
    p.a = amp;
    return qubit_gpc_criterion(p);
  };
  Emitted e;
  json rows = json::array();
  std::ostringstream csv;
  csv << std::setprecision(17) << "a,decision,margin\n";
  const int k = std::max(2, c.sweep_points);
  double threshold = std::numeric_limits<double>::quiet_NaN();
  bool prev_feasible = false;
  double prev_a = 0.0;
  for (int i = 0; i < k; ++i) {
    const double amp = static_cast<double>(i) / (k - 1);
    const ConversionVerdict v = decide(amp);
    rows.push_back({{"a", amp}, {"decision", to_string(v.decision)}, {"margin", number(v.margin)}});
    csv << amp << ',' << to_string(v.decision) << ',' << v.margin << '\n';
    if (i == 0 && v.feasible()) threshold = 0.0;
    if (i > 0 && !prev_feasible && v.feasible() && std::isnan(threshold)) {
      double lo = prev_a, hi = amp;
      while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        (decide(mid).feasible() ? hi : lo) = mid;
      }
      threshold = hi;
    }
    prev_feasible = v.feasible();
    prev_a = amp;
  }
  e.doc["criterion"] = "qubit-ratio-bound";
  e.doc["threshold"] = std::isnan(threshold) ? json(nullptr) : json(threshold);
  e.doc["rows"] = rows;
  e.csv = csv.str();
  return e;
}

Emitted divergence(const RunConfig& c) {
  need_inputs(c, 1);
  const AthermalityState s = load(c, 0);
  const DensityMatrix gm = s.gibbs_matrix();
  Emitted e;
  const DivergenceValue d = relative_entropy(s.state(), gm);
  const DivergenceValue dm = dmax(s.state(), gm);
  e.doc["relative_entropy"] = number(d.value);
  e.doc["support_violation"] = d.support_violation;
  e.doc["dmax"] = number(dm.value);
  e.doc["coherence"] = coherence(s.state(), s.hamiltonian());
  e.doc["entropy"] = von_neumann_entropy(s.state());
  e.doc["eps"] = c.eps;
  e.doc["distill_single_shot"] = number(distill_single_shot(s, c.eps));
  if (c.eps == 0.0 || is_quasi_classical(s.state(), s.hamiltonian())) {
    e.doc["cost_single_shot"] = number(cost_single_shot_gpo(s, c.eps));
  } else {
    e.doc["cost_single_shot"] = nullptr;
  }
  std::ostringstream csv;
  csv << std::setprecision(17) << "quantity,value\n"
      << "relative_entropy," << d.value << "\ndmax," << dm.value << "\ncoherence,"
      << e.doc["coherence"].get<double>() << '\n';
  e.csv = csv.str();
  return e;
}

Emitted distill(const RunConfig& c) {
  need_inputs(c, 1);
  const AthermalityState s = load(c, 0);
  Emitted e;
  const double v = distill_single_shot(s, c.eps);
  e.doc["eps"] = c.eps;
  e.doc["distill_single_shot"] = number(v);
  e.doc["criterion"] = "distill-single-shot";
  std::ostringstream csv;
  csv << std::setprecision(17) << "eps,value\n" << c.eps << ',' << v << '\n';
  e.csv = csv.str();
  return e;
}

struct PureSource {
  ProbVector p;
  ProbVector g;
  HamiltonianSpec h;
  double beta;
};

PureSource pure_source(const RunConfig& c) {
  need_inputs(c, 1);
  const AthermalityState s = load(c, 0);
  if (!s.state().is_pure()) {
    throw Error(ErrorCode::NotProductPure, "asymptotic commands need a pure single-copy state");
  }
  return {diag_of(s.state()), s.gibbs(), s.hamiltonian(), s.beta()};
}

Emitted asymptotics(const RunConfig& c) {
  const PureSource src = pure_source(c);
  const std::size_t m = src.p.dim();
  // For a pure state with matching phases D(psi||gamma) = -sum p log g.
  double reference = 0.0;
  for (std::size_t x = 0; x < m; ++x)
    if (src.p[x] > 0.0) reference -= src.p[x] * std::log2(src.g[x]);
  double max_log_g = 0.0;
  for (std::size_t x = 0; x < m; ++x)
    if (src.g[x] > 0.0) max_log_g = std::max(max_log_g, std::abs(std::log2(src.g[x])));

  Emitted e;
  json rows = json::array();
  std::ostringstream csv;
  csv << std::setprecision(17) << "n,value,bound,reference\n";
  for (int n = 1; n <= c.n_max; ++n) {
    double value = std::numeric_limits<double>::quiet_NaN(), bound = 0.0, ref = 0.0;
    try {
      if (c.curve == "distill") {
        value = distill_rate_estimate(n, src.p, src.g, src.h).value;
        bound = static_cast<double>(m) * std::log2(n + 1.0) / n;
        ref = reference;
      } else if (c.curve == "cost") {
        value = pure_cost_per_copy(n, c.alpha, src.p, src.g, src.h);
        bound = 2.0 * std::pow(static_cast<double>(n), c.alpha - 1.0) * max_log_g;
        ref = reference;
      } else if (c.curve == "coherence") {
        const CoherenceGrowth cg = coherence_growth(n, src.p, src.h);
        value = cg.value;
        bound = cg.bound;
      } else if (c.curve == "tail") {
        if (!(c.eps > 0.0)) throw Error(ErrorCode::EpsOutOfRange, "tail curve needs --eps > 0");
        const TailMass t = tail_mass_and_bound(n, c.eps, src.p);
        value = t.tail;
        bound = t.bound;
      } else if (c.curve == "budget") {
        const SlarSpec spec = slar_reference(n, c.alpha, src.p, src.h);
        const SlarBudget b = slar_budget(spec, src.beta);
        value = b.dmax_bound / n;
        bound = b.limit / n;
      } else {
        throw Error(ErrorCode::ParseError, "unknown curve '" + c.curve + "'");
      }
    } catch (const Error& err) {
      if (err.code() != ErrorCode::EmptyTypicalSet) throw;
    }
    csv << n << ',' << value << ',' << bound << ',' << ref << '\n';
    rows.push_back({{"n", n}, {"value", number(value)}, {"bound", number(bound)}, {"reference", ref}});
  }
  e.doc["curve"] = c.curve;
  e.doc["rows"] = rows;
  e.csv = csv.str();
  return e;
}

Emitted slar(const RunConfig& c) {
  const PureSource src = pure_source(c);
  const SlarSpec spec = slar_reference(c.n, c.alpha, src.p, src.h);
  const ChiState chi = chi_state(c.n, c.alpha, src.p, src.h);
  const SlarBudget b = slar_budget(spec, src.beta);
  const EnergyHistograms hist = slar_energy_histograms(spec, chi, src.h);
  bool match = hist.reference_with_z.size() == hist.ground_with_chi.size();
  for (std::size_t i = 0; match && i < hist.reference_with_z.size(); ++i) {
    const auto& [e1, w1] = hist.reference_with_z[i];
    const auto& [e2, w2] = hist.ground_with_chi[i];
    match = std::abs(e1 - e2) <= 1e-9 * (1.0 + std::abs(e2)) && std::abs(w1 - w2) <= 1e-12;
  }
  Emitted e;
  e.doc["n"] = c.n;
  e.doc["alpha"] = c.alpha;
  e.doc["levels"] = spec.levels.size();
  e.doc["max_level"] = spec.levels.back();
  e.doc["c_bound"] = spec.c_bound;
  e.doc["tight_bound"] = spec.tight_bound;
  e.doc["bound_holds"] = spec.bound_holds;
  e.doc["z_type"] = std::vector<int>(spec.z_type.counts().begin(), spec.z_type.counts().end());
  e.doc["min_energy_tie"] = spec.min_energy_tie;
  e.doc["dmax_bound"] = b.dmax_bound;
  e.doc["limit"] = b.limit;
  e.doc["histograms_match"] = match;
  e.doc["retained_mass"] = chi.retained_mass;
  e.doc["trace_distance"] = chi.trace_distance;
  std::ostringstream csv;
  csv << std::setprecision(17) << "j,level,weight\n";
  for (std::size_t j = 0; j < spec.levels.size(); ++j)
    csv << j << ',' << spec.levels[j] << ',' << spec.phi_weights[j] << '\n';
  e.csv = csv.str();
  return e;
}

Emitted type_stats(const RunConfig& c) {
  const PureSource src = pure_source(c);
  const int m = static_cast<int>(src.p.dim());
  Emitted e;
  e.doc["n"] = c.n;
  e.doc["types"] = type_count(c.n, m);
  e.doc["types_bound"] = std::pow(c.n + 1.0, m);
  const TypedSpectrum ts = typed_spectrum(c.n, src.p, src.h);
  e.doc["total_weight"] = std::exp2(ts.log_mass);
  if (c.eps > 0.0) {
    e.doc["eps"] = c.eps;
    e.doc["typical_types"] = typical_set(c.n, c.eps, src.p).size();
    const TailMass t = tail_mass_and_bound(c.n, c.eps, src.p);
    e.doc["tail"] = t.tail;
    e.doc["tail_bound"] = t.bound;
  }
  std::ostringstream csv;
  csv << std::setprecision(17) << "type,log_weight,energy\n";
  for (const auto& entry : ts.entries) {
    for (std::size_t x = 0; x < entry.type.m(); ++x) csv << (x ? " " : "") << entry.type.count(x);
    csv << ',' << entry.log_weight << ',' << entry.energy << '\n';
  }
  e.csv = csv.str();
  return e;
}

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::ParseError ? kExitParse : kExitPrecondition;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "convert-check") return Command::ConvertCheck;
  if (name == "qubit-gpc") return Command::QubitGpc;
  if (name == "divergence") return Command::Divergence;
  if (name == "distill") return Command::Distill;
  if (name == "asymptotics") return Command::Asymptotics;
  if (name == "slar") return Command::Slar;
  if (name == "type-stats") return Command::TypeStats;
  throw Error(ErrorCode::ParseError, "unknown command '" + name + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Emitted e;
  try {
    if (!(config.tol > 0.0)) throw Error(ErrorCode::ParseError, "--tol must be positive");
    switch (config.command) {
      case Command::ConvertCheck: e = convert_check(config); break;
      case Command::QubitGpc: e = qubit_gpc(config); break;
      case Command::Divergence: e = divergence(config); break;
      case Command::Distill: e = distill(config); break;
      case Command::Asymptotics: e = asymptotics(config); break;
      case Command::Slar: e = slar(config); break;
      case Command::TypeStats: e = type_stats(config); break;
    }
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_code_for(ex.code());
  }
  const std::string text = config.format == Format::Csv ? e.csv : e.doc.dump(2) + "\n";
  if (config.out.empty()) {
    out << text;
  } else {
    std::ofstream f(config.out);
    if (!f) {
      err << "error: cannot write " << config.out << '\n';
      return kExitParse;
    }
    f << text;
  }
  if (e.status == kExitNotFound) err << "no decision within the iteration budget\n";
  return e.status;
}

}  // namespace athermal::cli
