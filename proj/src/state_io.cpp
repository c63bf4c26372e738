#include "athermal/state_io.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "athermal/errors.hpp"

namespace athermal {

using nlohmann::json;

namespace {

cplx complex_from_json(const json& z) {
  if (z.is_number()) return {z.get<double>(), 0.0};
  if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
    throw Error(ErrorCode::ParseError, "complex entries must be [re, im] pairs");
  }
  return {z[0].get<double>(), z[1].get<double>()};
}

}  // namespace

ComplexMatrix complex_matrix_from_json(const json& j, std::size_t dim) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "matrix must be a JSON array");
  std::vector<cplx> entries;
  entries.reserve(j.size());
  for (const auto& z : j) entries.push_back(complex_from_json(z));
  if (entries.size() != dim * dim) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(dim * dim) +
                                           " matrix entries, got " + std::to_string(entries.size()));
  }
  return ComplexMatrix(dim, std::move(entries));
}

json to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (const auto& z : m.entries()) out.push_back({z.real(), z.imag()});
  return out;
}

json to_json(const RealMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

RealMatrix real_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw Error(ErrorCode::ParseError, "real matrix must be an array of rows");
  }
  RealMatrix m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != m.cols()) throw Error(ErrorCode::ParseError, "ragged real matrix");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

AthermalityState state_from_json(const json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "state file must be a JSON object");
    if (!j.contains("levels") || !j.contains("beta") || !j.contains("rho")) {
      throw Error(ErrorCode::ParseError, "state needs \"levels\", \"beta\" and \"rho\"");
    }
    auto levels = j.at("levels").get<std::vector<double>>();
    const double beta = j.at("beta").get<double>();
    auto rho = complex_matrix_from_json(j.at("rho"), levels.size());
    return AthermalityState(DensityMatrix(std::move(rho)), HamiltonianSpec(std::move(levels)), beta);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, e.what());
  }
}

json to_json(const AthermalityState& s) {
  json out;
  out["levels"] = std::vector<double>(s.hamiltonian().levels().begin(), s.hamiltonian().levels().end());
  out["beta"] = s.beta();
  out["rho"] = to_json(s.state().matrix());
  return out;
}

AthermalityState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return state_from_json(j);
}

}  // namespace athermal
