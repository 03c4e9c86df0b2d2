#include "carrierflow/scenario_spec.hpp"

#include <algorithm>

#include "carrierflow/errors.hpp"

namespace carrierflow {

bool ScenarioSpec::subset_of(const ScenarioSpec& o) const {
    auto le = [](bool a, bool b) { return !a || b; };
    return le(grid_onshore, o.grid_onshore) && le(grid_offshore, o.grid_offshore) &&
           le(grid_cross_border, o.grid_cross_border) && le(storage_onshore, o.storage_onshore) &&
           le(storage_offshore, o.storage_offshore) && le(h2_electrolysis_onshore, o.h2_electrolysis_onshore) &&
           le(h2_electrolysis_offshore, o.h2_electrolysis_offshore) && le(h2_storage, o.h2_storage) &&
           le(h2_fuel_cell, o.h2_fuel_cell) && le(h2_pipelines, o.h2_pipelines) &&
           le(vres_expandable, o.vres_expandable) && storage_power_to_energy == o.storage_power_to_energy &&
           offshore_storage_cap_mwh <= o.offshore_storage_cap_mwh;
}

const std::vector<std::string>& scenario_ids() {
    static const std::vector<std::string> ids{"reference", "t-all", "t-1", "t-2", "t-3", "s-all", "s-1", "s-2",
                                              "s-all-hpe", "h-all", "h-1", "h-2", "h-3", "h-4", "synergies"};
    return ids;
}

ScenarioSpec scenario_by_id(std::string_view full_id) {
    std::string_view id = full_id;
    bool y2040 = false;
    constexpr std::string_view suffix = "-2040";
    if (id.size() > suffix.size() && id.substr(id.size() - suffix.size()) == suffix) {
        y2040 = true;
        id.remove_suffix(suffix.size());
    }
    ScenarioSpec s;
    s.id = std::string(full_id);
    s.vres_expandable = y2040;
    auto grid = [&](bool on, bool off, bool cross) {
        s.grid_onshore = on;
        s.grid_offshore = off;
        s.grid_cross_border = cross;
    };
    auto h2 = [&](bool el_on, bool el_off, bool storage, bool fc, bool pipes) {
        s.h2_electrolysis_onshore = el_on;
        s.h2_electrolysis_offshore = el_off;
        s.h2_storage = storage;
        s.h2_fuel_cell = fc;
        s.h2_pipelines = pipes;
    };
    if (id == "reference") {
    } else if (id == "t-all") {
        grid(true, true, true);
    } else if (id == "t-1") {
        grid(true, false, true);
    } else if (id == "t-2") {
        grid(false, true, true);
    } else if (id == "t-3") {
        grid(true, true, false);
    } else if (id == "s-all") {
        s.storage_onshore = s.storage_offshore = true;
    } else if (id == "s-1") {
        s.storage_onshore = true;
    } else if (id == "s-2") {
        s.storage_offshore = true;
    } else if (id == "s-all-hpe") {
        s.storage_onshore = s.storage_offshore = true;
        s.storage_power_to_energy = 1.0;
    } else if (id == "h-all") {
        h2(true, true, true, true, true);
    } else if (id == "h-1") {
        h2(true, false, true, true, true);
    } else if (id == "h-2") {
        h2(false, true, true, true, true);
    } else if (id == "h-3") {
        h2(true, true, false, true, true);
    } else if (id == "h-4") {
        h2(true, false, true, true, false);
    } else if (id == "synergies") {
        grid(true, true, true);
        s.storage_onshore = s.storage_offshore = true;
        h2(true, true, true, true, true);
    } else {
        throw DataError("unknown scenario '" + std::string(full_id) + "'");
    }
    return s;
}

bool branch_is_offshore(const EnergySystem& system, const NetworkBranch& b) {
    return system.node(b.from_node).location == LocationKind::offshore ||
           system.node(b.to_node).location == LocationKind::offshore;
}

bool branch_crosses_border(const EnergySystem& system, const NetworkBranch& b) {
    return system.node(b.from_node).country != system.node(b.to_node).country;
}

bool scenario_allows(const EnergySystem& system, const ScenarioSpec& spec, const TechnologyInstance& t) {
    const bool offshore = system.node(t.node).location == LocationKind::offshore;
    switch (t.category) {
        case TechCategory::vres: return spec.vres_expandable;
        case TechCategory::battery: return offshore ? spec.storage_offshore : spec.storage_onshore;
        case TechCategory::electrolyzer: return offshore ? spec.h2_electrolysis_offshore : spec.h2_electrolysis_onshore;
        case TechCategory::fuel_cell: return spec.h2_fuel_cell;
        case TechCategory::h2_storage: return spec.h2_storage;
        case TechCategory::gas_plant:
        case TechCategory::generic: return false;
    }
    return false;
}

bool scenario_allows(const EnergySystem& system, const ScenarioSpec& spec, const NetworkBranch& b) {
    if (is_pipeline(b.kind)) return spec.h2_pipelines;
    const bool class_ok = branch_is_offshore(system, b) ? spec.grid_offshore : spec.grid_onshore;
    return class_ok && (!branch_crosses_border(system, b) || spec.grid_cross_border);
}

EnergySystem apply_scenario(const EnergySystem& system, const ScenarioSpec& spec) {
    EnergySystem g = system;
    for (auto& t : g.technologies) {
        t.expandable = t.expandable && scenario_allows(system, spec, t);
        if (t.category == TechCategory::battery) {
            t.storage.max_charge_rate = spec.storage_power_to_energy;
            t.storage.max_discharge_rate = spec.storage_power_to_energy;
            if (system.node(t.node).location == LocationKind::offshore)
                t.max_size = std::max(t.existing_size, std::min(t.max_size, spec.offshore_storage_cap_mwh));
        }
        if (t.category == TechCategory::gas_plant && !spec.any_electrolysis() && t.kind == TechKind::conversion2) {
            auto& in = t.conversion.inputs;
            in.erase(std::remove(in.begin(), in.end(), Carrier::hydrogen), in.end());
            t.conversion.admix_limits.erase(Carrier::hydrogen);
        }
    }
    for (auto& b : g.branches) b.expandable = b.expandable && scenario_allows(system, spec, b);
    return g;
}

}  // namespace carrierflow
