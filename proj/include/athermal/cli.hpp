#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace athermal::cli {

enum class Command { ConvertCheck, QubitGpc, Divergence, Distill, Asymptotics, Slar, TypeStats };

enum class Format { Json, Csv };

struct RunConfig {
  Command command = Command::ConvertCheck;
  std::vector<std::string> inputs;
  double tol = 1e-9;
  double eps = 0.0;
  double beta = 0.0;  // 0: take beta from the input file
  double alpha = 0.75;
  int n = 100;
  int n_max = 200;
  std::size_t budget = 10000;
  Format format = Format::Json;
  std::string out;  // empty: standard output
  std::string curve = "distill";
  std::string method = "covariant";  // convert-check: covariant | gpc | same-diagonal
  bool sweep = false;
  int sweep_points = 101;
};

inline constexpr int kExitFeasible = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitNotFound = 4;

Command parse_command(const std::string& name);

/// Executes one command; artifacts go to config.out or `out`, messages to
/// `err`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace athermal::cli
