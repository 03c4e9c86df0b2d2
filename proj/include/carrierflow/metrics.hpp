#pragma once

#include <map>
#include <string>
#include <vector>

#include "carrierflow/system.hpp"
#include "carrierflow/variable_index.hpp"

namespace carrierflow {

/// Electricity supply of one country by source, MWh over the horizon. Supply
/// is everything fed into the country's balances: generation, storage
/// discharge, market imports and energy received over cross-border branches.
struct CountrySupply {
    double renewable = 0.0;     // vres output
    double conventional = 0.0;  // other conversion outputs
    double storage = 0.0;       // storage discharge
    double imports = 0.0;       // market imports
    double cross_border = 0.0;  // received from other countries
    double total() const { return renewable + conventional + storage + imports + cross_border; }
    double renewable_share() const { return total() > 0.0 ? renewable / total() : 0.0; }
};

struct HydrogenUse {
    double produced = 0.0;     // electrolyzer output
    double reconverted = 0.0;  // hydrogen burnt in fuel cells and gas plants
    double stored = 0.0;       // charged into hydrogen storage
    double transported = 0.0;  // sent through pipelines
    double direct_use = 0.0;   // produced minus reconverted, floored at zero
};

struct NewCapacity {
    std::string entity;
    std::string group;     // technology category or network kind
    LocationKind location = LocationKind::onshore;
    double size = 0.0;     // MW, MWh for storage
    std::string unit;

    bool operator==(const NewCapacity&) const = default;
};

/// Capacity additions summed by group and location.
struct CapacityRow {
    std::string group;
    LocationKind location = LocationKind::onshore;
    double size = 0.0;
    std::string unit;

    bool operator==(const CapacityRow&) const = default;
};

struct Metrics {
    std::map<std::string, CountrySupply> supply;  // by country
    double renewable_share = 0.0;                 // over all countries
    double renewable_available = 0.0;             // MWh
    double renewable_dispatched = 0.0;
    double curtailment_share = 0.0;
    std::map<std::string, double> capacity_factor;  // by technology id, non-storage only
    HydrogenUse hydrogen;
    std::map<std::string, double> import_share;     // carrier -> imports / demand

    bool operator==(const Metrics&) const = default;
};

bool operator==(const CountrySupply& a, const CountrySupply& b);
bool operator==(const HydrogenUse& a, const HydrogenUse& b);

/// Post-processing of a solution of the gated system.
Metrics compute_metrics(const EnergySystem& gated, const VariableIndex& index, const std::vector<double>& solution);

/// Size in MW (MWh for storage) built per expandable entity; entries below
/// 1e-9 are dropped.
std::vector<NewCapacity> new_capacities(const EnergySystem& gated, const VariableIndex& index,
                                        const std::vector<double>& solution);
std::vector<CapacityRow> aggregate_capacities(const std::vector<NewCapacity>& items);

}  // namespace carrierflow
