#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "carrierflow/system.hpp"

namespace carrierflow {

// Input directory layout:
//   manifest.json           name, horizon, carbon price, units, imports
//   nodes.csv               id,country,location
//   technologies.csv        one row per technology, every column always present
//   branches.csv            one row per branch
//   demand_<carrier>.csv    step plus one column per node; an all-zero column means no demand
//   profiles.csv            step plus one column per renewable technology
//   inflows.csv             step plus one column per open-loop storage
// Units are fixed: MW, MWh, EUR, kEUR for investment, t CO2, km, bar, K.

/// File name -> content, in the canonical text form.
std::map<std::string, std::string> render_system_files(const EnergySystem& system);

void write_system_files(const EnergySystem& system, const std::filesystem::path& directory);

/// Reads without checking invariants. Throws SchemaError naming file, row and
/// column for malformed input, IoError when a required file is missing.
EnergySystem read_system_files(const std::filesystem::path& directory);

/// read_system_files followed by require_valid.
EnergySystem parse_system_files(const std::filesystem::path& directory);

/// 16 hex digits of FNV-1a over the canonical files.
std::string system_digest(const EnergySystem& system);

/// %.17g, with inf and -inf spelled out.
std::string format_double(double v);

}  // namespace carrierflow
