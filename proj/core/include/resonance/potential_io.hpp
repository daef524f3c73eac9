#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "resonance/potential.hpp"

namespace resonance {

/// {"case": "line"|"dirichlet"|"neumann", "breakpoints": [...], "values": [...]}
nlohmann::json to_json(const PiecewisePotential& p);

/// Throws Error(Parse) naming the offending field.
PiecewisePotential potential_from_json(const nlohmann::json& j);
PiecewisePotential load_potential(const std::filesystem::path& path);
void save_potential(const PiecewisePotential& p, const std::filesystem::path& path);

} // namespace resonance
