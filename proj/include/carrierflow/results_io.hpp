#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "carrierflow/scenario.hpp"

namespace carrierflow {

// result.json layout:
//   scenario, mode, system_digest, status, objective
//   emissions {E_tec, E_imp, total}            t CO2
//   costs {C_tec, C_netw, C_imp, C_CO2, total}  EUR
//   shadow_carbon_price (null without a cap), mip_gap, iterations, nodes
//   warm_start_stages [status, status, status]
//   metrics {renewable_share, renewable_available, renewable_dispatched,
//            curtailment_share, supply {country: {...}}, capacity_factor {...},
//            hydrogen {...}, import_share {...}}
//   new_capacities [{entity, group, location, size, unit}]
//   capacity_table [{group, location, size, unit}]
//   sizes {column name: value}
std::string outcome_to_json(const ScenarioOutcome& outcome);
/// Throws DataError on malformed input.
ScenarioOutcome outcome_from_json(const std::string& text);

std::string curve_to_json(const AbatementCurve& curve);
AbatementCurve curve_from_json(const std::string& text);

/// group,location,new_capacity,unit; header only without additions.
std::string capacities_csv(const ScenarioOutcome& outcome);
/// target_fraction,emission_cap,cost,emissions,abatement_cost,status; empty cells for missing values.
std::string frontier_csv(const AbatementCurve& curve);

/// Writes result.json and capacities.csv, plus frontier.csv and curve.json
/// when a curve is given. Each file is written to a temporary name and renamed.
/// Throws IoError when the directory cannot be written.
void export_results(const ScenarioOutcome& outcome, const std::filesystem::path& directory,
                    const std::optional<AbatementCurve>& curve = std::nullopt);

/// Atomic text file write.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace carrierflow
