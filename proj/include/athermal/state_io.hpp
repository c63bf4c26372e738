#pragma once

// JSON state files:
//   {"levels": [a_1, ..., a_m], "beta": b, "rho": [[re, im], ...]}
// with rho given row-major as m*m complex pairs.

#include <filesystem>

#include <json.hpp>

#include "athermal/states.hpp"

namespace athermal {

AthermalityState state_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AthermalityState& s);

nlohmann::json to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const nlohmann::json& j, std::size_t dim);
nlohmann::json to_json(const RealMatrix& m);
RealMatrix real_matrix_from_json(const nlohmann::json& j);

/// Throws Error(ParseError) for unreadable files or schema violations.
AthermalityState load_state(const std::filesystem::path& path);

}  // namespace athermal
