#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace carrierflow {

enum class Carrier { electricity = 0, hydrogen = 1, natural_gas = 2 };
inline constexpr std::array<Carrier, 3> kCarriers{Carrier::electricity, Carrier::hydrogen,
                                                   Carrier::natural_gas};
inline constexpr int kCarrierCount = 3;
inline constexpr int carrier_slot(Carrier c) { return static_cast<int>(c); }

const char* to_string(Carrier c);
/// Accepts "electricity", "hydrogen", "natural_gas". Throws DataError otherwise.
Carrier parse_carrier(std::string_view s);

/// Per-carrier value table.
template <class T>
using PerCarrier = std::array<T, kCarrierCount>;

enum class LocationKind { onshore, offshore };
const char* to_string(LocationKind k);
LocationKind parse_location(std::string_view s);

struct Node {
    std::string id;
    std::string country;
    LocationKind location = LocationKind::onshore;
    PerCarrier<double> import_limit{};            // MW, infinity for unbounded, 0 for none
    PerCarrier<double> import_price{};            // EUR/MWh
    PerCarrier<double> import_emission_factor{};  // t/MWh

    bool operator==(const Node&) const = default;
};

struct TimeHorizon {
    int step_count = 1;
    double hours_per_step = 1.0;

    bool operator==(const TimeHorizon&) const = default;
};

struct DemandSeries {
    std::string node;
    Carrier carrier = Carrier::electricity;
    std::vector<double> values;  // MWh per step

    bool operator==(const DemandSeries&) const = default;
};

enum class TechKind { renewable, conversion1, conversion2, storage1, storage2_1, storage2_2 };
const char* to_string(TechKind k);
TechKind parse_tech_kind(std::string_view s);

/// What a technology is, for scenario gating and reporting.
enum class TechCategory { vres, battery, electrolyzer, fuel_cell, h2_storage, gas_plant, generic };
const char* to_string(TechCategory c);
TechCategory parse_tech_category(std::string_view s);

struct CostParams {
    double capex_per_size = 0.0;    // kEUR per MW (per MWh for storage)
    double lifetime = 0.0;          // years
    double fixed_opex_share = 0.0;  // fraction of annualized capex per year
    double variable_opex = 0.0;     // EUR per MWh output
    double discount_rate = 0.04;

    bool operator==(const CostParams&) const = default;
};

struct Conversion2Params {
    double efficiency = 1.0;
    std::vector<Carrier> inputs;
    Carrier output = Carrier::electricity;
    std::map<Carrier, double> admix_limits;  // input carrier -> max share of total input

    bool operator==(const Conversion2Params&) const = default;
};

struct StorageParams {
    Carrier carrier = Carrier::electricity;
    double max_charge_rate = 1.0;     // per unit of size, per hour
    double max_discharge_rate = 1.0;
    double self_discharge = 0.0;      // fraction per hour
    double charge_efficiency = 1.0;
    double discharge_efficiency = 1.0;
    double compression_electricity = 0.0;  // MWh el per MWh charged, storage2_2 only

    bool operator==(const StorageParams&) const = default;
};

enum class FlowDirection { input, output };

struct EmissionFactor {
    FlowDirection direction = FlowDirection::output;
    Carrier carrier = Carrier::electricity;
    double t_per_mwh = 0.0;

    bool operator==(const EmissionFactor&) const = default;
};

struct TechnologyInstance {
    std::string id;
    std::string node;
    TechKind kind = TechKind::renewable;
    TechCategory category = TechCategory::generic;
    double existing_size = 0.0;  // MW, or MWh for storage
    bool expandable = false;
    double max_size = 0.0;
    Carrier output_carrier = Carrier::electricity;  // renewable and conversion1
    Conversion2Params conversion;
    StorageParams storage;
    std::vector<EmissionFactor> emission_factors;
    CostParams cost;

    double emission_factor(FlowDirection d, Carrier c) const;
    bool is_storage() const {
        return kind == TechKind::storage1 || kind == TechKind::storage2_1 || kind == TechKind::storage2_2;
    }

    bool operator==(const TechnologyInstance&) const = default;
};

enum class NetworkKind {
    electricity_ac,
    electricity_dc,
    pipeline_offshore,
    pipeline_onshore_new,
    pipeline_onshore_repurposed,
};
const char* to_string(NetworkKind k);
NetworkKind parse_network_kind(std::string_view s);
bool is_pipeline(NetworkKind k);

struct CompressionParams {
    double outlet_pressure_bar = 140.0;
    double specific_heat = 0.00398;
    double temperature_k = 300.0;
    double efficiency = 0.65;
    double heat_capacity_ratio = 1.405;
    double lower_heating_value = 33.32;
    double reference_pressure_bar = 30.0;

    bool operator==(const CompressionParams&) const = default;
};

struct CostPolynomial {
    double gamma1 = 0.0;  // kEUR
    double gamma2 = 0.0;  // kEUR/MW
    double gamma3 = 0.0;  // kEUR/km
    double gamma4 = 0.0;  // kEUR/(km MW)

    bool operator==(const CostPolynomial&) const = default;
};

struct NetworkBranch {
    std::string id;
    NetworkKind kind = NetworkKind::electricity_ac;
    Carrier carrier = Carrier::electricity;
    std::string from_node;
    std::string to_node;
    double length_km = 1.0;
    double existing_capacity = 0.0;  // MW
    bool expandable = false;
    double max_capacity = 0.0;
    std::optional<double> integer_block_mw;
    double loss_factor_per_km = 0.0;
    bool bidirectional = true;
    CostPolynomial cost_poly;
    double fixed_opex_share = 0.0;
    double lifetime = 40.0;
    double discount_rate = 0.04;
    double variable_opex = 0.0;  // EUR per MWh sent
    std::optional<CompressionParams> compression;

    bool operator==(const NetworkBranch&) const = default;
};

struct EnergySystem {
    std::string name = "system";
    TimeHorizon horizon;
    std::vector<Node> nodes;
    std::vector<TechnologyInstance> technologies;
    std::vector<NetworkBranch> branches;
    std::vector<DemandSeries> demands;
    double carbon_price = 0.0;  // EUR/t
    /// Share of a year the investment terms are charged for; defaults to the
    /// horizon length over 8760 h when unset.
    std::optional<double> capex_period_fraction;
    std::map<std::string, std::vector<double>> renewable_profiles;  // MWh per step at existing size
    std::map<std::string, std::vector<double>> hydro_inflows;       // MWh per step

    double investment_weight() const;
    int node_index(std::string_view id) const;  // -1 when absent
    int tech_index(std::string_view id) const;
    int branch_index(std::string_view id) const;
    const Node& node(std::string_view id) const;  // StructuralError when absent
    /// Demand at node/carrier, zeros when there is no series.
    std::vector<double> demand(std::string_view node, Carrier c) const;

    bool operator==(const EnergySystem&) const = default;
};

struct Violation {
    std::string entity;
    std::string invariant;
    std::string message() const { return entity + ": " + invariant; }
};

/// Every broken type invariant, one entry each. Empty when the system is valid.
std::vector<Violation> validate_system(const EnergySystem& system);

/// Throws DataError listing the violations, if any.
void require_valid(const EnergySystem& system);

}  // namespace carrierflow
