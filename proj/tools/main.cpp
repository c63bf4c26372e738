#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "athermal/cli.hpp"
#include "athermal/errors.hpp"

int main(int argc, char** argv) {
  using namespace athermal::cli;
  CLI::App app{"Athermality conversion checks, divergences and asymptotic rates"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "Numerical tolerance for iterative solvers");
    sub->add_option("--beta", cfg.beta, "Override the inverse temperature of the inputs");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "Write the artifact here instead of stdout");
  };

  auto* convert = app.add_subcommand("convert-check", "Decide rho -> sigma");
  convert->add_option("inputs", cfg.inputs, "source.json target.json")->required()->expected(2);
  convert->add_option("--method", cfg.method, "covariant | gpc | same-diagonal")
      ->check(CLI::IsMember({"covariant", "gpc", "same-diagonal"}));
  convert->add_option("--budget", cfg.budget, "Iteration cap for the GPC solver");
  common(convert);

  auto* qubit = app.add_subcommand("qubit-gpc", "Closed-form GPC criterion for qubits");
  qubit->add_option("inputs", cfg.inputs, "source.json target.json")->required()->expected(2);
  qubit->add_flag("--sweep", cfg.sweep, "Sweep |a| over [0, 1] and report the threshold");
  qubit->add_option("--points", cfg.sweep_points, "Grid points of the sweep");
  common(qubit);

  auto* div = app.add_subcommand("divergence", "Divergences of (rho, gamma)");
  div->add_option("inputs", cfg.inputs, "state.json")->required()->expected(1);
  div->add_option("--eps", cfg.eps, "Smoothing parameter");
  common(div);

  auto* dist = app.add_subcommand("distill", "Single-shot distillable athermality");
  dist->add_option("inputs", cfg.inputs, "state.json")->required()->expected(1);
  dist->add_option("--eps", cfg.eps, "Smoothing parameter");
  common(dist);

  auto* asym = app.add_subcommand("asymptotics", "Per-copy curves for pure product states");
  asym->add_option("inputs", cfg.inputs, "state.json (pure)")->required()->expected(1);
  asym->add_option("--curve", cfg.curve, "distill | cost | coherence | tail | budget")
      ->check(CLI::IsMember({"distill", "cost", "coherence", "tail", "budget"}));
  asym->add_option("--n-max", cfg.n_max, "Largest number of copies");
  asym->add_option("--alpha", cfg.alpha, "Truncation exponent in (1/2, 1)");
  asym->add_option("--eps", cfg.eps, "Typical-set radius for the tail curve");
  common(asym);

  auto* slar = app.add_subcommand("slar", "Sublinear reference system for n copies");
  slar->add_option("inputs", cfg.inputs, "state.json (pure)")->required()->expected(1);
  slar->add_option("--n", cfg.n, "Number of copies");
  slar->add_option("--alpha", cfg.alpha, "Truncation exponent in (1/2, 1)");
  common(slar);

  auto* types = app.add_subcommand("type-stats", "Type-class statistics");
  types->add_option("inputs", cfg.inputs, "state.json (pure)")->required()->expected(1);
  types->add_option("--n", cfg.n, "Number of copies");
  types->add_option("--eps", cfg.eps, "Typical-set radius");
  common(types);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }
  cfg.format = format == "csv" ? Format::Csv : Format::Json;
  cfg.command = parse_command(app.get_subcommands().front()->get_name());
  return run(cfg, std::cout, std::cerr);
}
