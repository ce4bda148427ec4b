#pragma once

#include "netspec/degree_model.hpp"

#include <json.hpp>

#include <filesystem>

namespace netspec {

/// Model file schema:
///
///   {"atoms": [[degree, weight], ...],
///    "continuous": {"kind": "uniform" | "tabulated" | "powerlaw",
///                   "lo": k_lo, "hi": k_hi, "nodes": 256,
///                   "table": [[k, density], ...],   // tabulated
///                   "exponent": 2.5}}                // powerlaw
///
/// Either member may be omitted, not both. The continuous part carries the
/// probability left over by the atoms.
DegreeModel model_from_json(const nlohmann::json& spec);
nlohmann::json model_to_json(const DegreeModel& model);
nlohmann::json read_json_file(const std::filesystem::path& path);
DegreeModel load_model(const std::filesystem::path& path);

}  // namespace netspec
