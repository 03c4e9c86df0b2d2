#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "carrierflow/system.hpp"

namespace carrierflow {

/// Which expansion options a scenario opens.
struct ScenarioSpec {
    std::string id = "reference";
    bool grid_onshore = false;
    bool grid_offshore = false;
    bool grid_cross_border = false;
    bool storage_onshore = false;
    bool storage_offshore = false;
    double storage_power_to_energy = 0.333;
    double offshore_storage_cap_mwh = 140000.0;
    bool h2_electrolysis_onshore = false;
    bool h2_electrolysis_offshore = false;
    bool h2_storage = false;
    bool h2_fuel_cell = false;
    bool h2_pipelines = false;
    bool vres_expandable = false;

    bool any_electrolysis() const { return h2_electrolysis_onshore || h2_electrolysis_offshore; }
    /// True when every option open here is also open in `other`.
    bool subset_of(const ScenarioSpec& other) const;

    bool operator==(const ScenarioSpec&) const = default;
};

/// reference, t-all, t-1, t-2, t-3, s-all, s-1, s-2, s-all-hpe, h-all, h-1..h-4, synergies.
const std::vector<std::string>& scenario_ids();

/// Catalog lookup. A "-2040" suffix additionally makes renewables expandable.
/// Throws DataError for unknown ids.
ScenarioSpec scenario_by_id(std::string_view id);

/// Electricity branch class: onshore when both ends are onshore.
bool branch_is_offshore(const EnergySystem& system, const NetworkBranch& branch);
bool branch_crosses_border(const EnergySystem& system, const NetworkBranch& branch);

/// Whether the scenario permits expanding a technology or branch (ignoring its
/// own expandable flag).
bool scenario_allows(const EnergySystem& system, const ScenarioSpec& spec, const TechnologyInstance& tech);
bool scenario_allows(const EnergySystem& system, const ScenarioSpec& spec, const NetworkBranch& branch);

/// Copy of the system with expansion flags cleared where the scenario forbids
/// them, battery rates set to the power-to-energy ratio, offshore battery sizes
/// capped, and hydrogen admixing removed when no electrolysis is possible.
EnergySystem apply_scenario(const EnergySystem& system, const ScenarioSpec& spec);

}  // namespace carrierflow
