#include "carrierflow/system.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "carrierflow/errors.hpp"

namespace carrierflow {

const char* to_string(Carrier c) {
    switch (c) {
        case Carrier::electricity: return "electricity";
        case Carrier::hydrogen: return "hydrogen";
        case Carrier::natural_gas: return "natural_gas";
    }
    return "?";
}

Carrier parse_carrier(std::string_view s) {
    for (Carrier c : kCarriers)
        if (s == to_string(c)) return c;
    throw DataError("unknown carrier '" + std::string(s) + "'");
}

const char* to_string(LocationKind k) { return k == LocationKind::onshore ? "onshore" : "offshore"; }

LocationKind parse_location(std::string_view s) {
    if (s == "onshore") return LocationKind::onshore;
    if (s == "offshore") return LocationKind::offshore;
    throw DataError("unknown location kind '" + std::string(s) + "'");
}

namespace {

template <class E, std::size_t N>
E parse_enum(std::string_view s, const std::array<E, N>& all, const char* what) {
    for (E e : all)
        if (s == to_string(e)) return e;
    throw DataError(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

constexpr std::array<TechKind, 6> kTechKinds{TechKind::renewable, TechKind::conversion1, TechKind::conversion2,
                                             TechKind::storage1, TechKind::storage2_1, TechKind::storage2_2};
constexpr std::array<TechCategory, 7> kCategories{TechCategory::vres, TechCategory::battery,
                                                  TechCategory::electrolyzer, TechCategory::fuel_cell,
                                                  TechCategory::h2_storage, TechCategory::gas_plant,
                                                  TechCategory::generic};
constexpr std::array<NetworkKind, 5> kNetworkKinds{NetworkKind::electricity_ac, NetworkKind::electricity_dc,
                                                   NetworkKind::pipeline_offshore, NetworkKind::pipeline_onshore_new,
                                                   NetworkKind::pipeline_onshore_repurposed};

}  // namespace

const char* to_string(TechKind k) {
    switch (k) {
        case TechKind::renewable: return "renewable";
        case TechKind::conversion1: return "conversion1";
        case TechKind::conversion2: return "conversion2";
        case TechKind::storage1: return "storage1";
        case TechKind::storage2_1: return "storage2_1";
        case TechKind::storage2_2: return "storage2_2";
    }
    return "?";
}

TechKind parse_tech_kind(std::string_view s) { return parse_enum(s, kTechKinds, "technology kind"); }

const char* to_string(TechCategory c) {
    switch (c) {
        case TechCategory::vres: return "vres";
        case TechCategory::battery: return "battery";
        case TechCategory::electrolyzer: return "electrolyzer";
        case TechCategory::fuel_cell: return "fuel_cell";
        case TechCategory::h2_storage: return "h2_storage";
        case TechCategory::gas_plant: return "gas_plant";
        case TechCategory::generic: return "generic";
    }
    return "?";
}

TechCategory parse_tech_category(std::string_view s) { return parse_enum(s, kCategories, "technology category"); }

const char* to_string(NetworkKind k) {
    switch (k) {
        case NetworkKind::electricity_ac: return "electricity_ac";
        case NetworkKind::electricity_dc: return "electricity_dc";
        case NetworkKind::pipeline_offshore: return "pipeline_offshore";
        case NetworkKind::pipeline_onshore_new: return "pipeline_onshore_new";
        case NetworkKind::pipeline_onshore_repurposed: return "pipeline_onshore_repurposed";
    }
    return "?";
}

NetworkKind parse_network_kind(std::string_view s) { return parse_enum(s, kNetworkKinds, "network kind"); }

bool is_pipeline(NetworkKind k) {
    return k == NetworkKind::pipeline_offshore || k == NetworkKind::pipeline_onshore_new ||
           k == NetworkKind::pipeline_onshore_repurposed;
}

double TechnologyInstance::emission_factor(FlowDirection d, Carrier c) const {
    double f = 0.0;
    for (const auto& e : emission_factors)
        if (e.direction == d && e.carrier == c) f += e.t_per_mwh;
    return f;
}

double EnergySystem::investment_weight() const {
    if (capex_period_fraction) return *capex_period_fraction;
    return horizon.step_count * horizon.hours_per_step / 8760.0;
}

int EnergySystem::node_index(std::string_view id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id) return static_cast<int>(i);
    return -1;
}

int EnergySystem::tech_index(std::string_view id) const {
    for (std::size_t i = 0; i < technologies.size(); ++i)
        if (technologies[i].id == id) return static_cast<int>(i);
    return -1;
}

int EnergySystem::branch_index(std::string_view id) const {
    for (std::size_t i = 0; i < branches.size(); ++i)
        if (branches[i].id == id) return static_cast<int>(i);
    return -1;
}

const Node& EnergySystem::node(std::string_view id) const {
    const int i = node_index(id);
    if (i < 0) throw StructuralError("unknown node '" + std::string(id) + "'");
    return nodes[i];
}

std::vector<double> EnergySystem::demand(std::string_view node_id, Carrier c) const {
    for (const auto& d : demands)
        if (d.node == node_id && d.carrier == c) return d.values;
    return std::vector<double>(horizon.step_count, 0.0);
}

namespace {

class Checker {
public:
    explicit Checker(std::vector<Violation>& out) : out_(out) {}
    void require(bool ok, const std::string& entity, const std::string& invariant) {
        if (!ok) out_.push_back({entity, invariant});
    }

private:
    std::vector<Violation>& out_;
};

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }
bool share(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }
bool efficiency(double v) { return std::isfinite(v) && v > 0.0 && v <= 1.0; }

void check_series(Checker& c, const std::string& entity, const std::vector<double>& v, int steps) {
    c.require(static_cast<int>(v.size()) == steps, entity,
              "series length " + std::to_string(v.size()) + " differs from step_count " + std::to_string(steps));
    c.require(std::all_of(v.begin(), v.end(), finite_nonneg), entity, "series values must be finite and >= 0");
}

void check_cost(Checker& c, const std::string& e, const CostParams& k) {
    c.require(finite_nonneg(k.capex_per_size), e, "capex_per_size must be finite and >= 0");
    c.require(k.capex_per_size == 0.0 || (std::isfinite(k.lifetime) && k.lifetime > 0.0), e,
              "lifetime must be > 0 when capex_per_size > 0");
    c.require(share(k.fixed_opex_share), e, "fixed_opex_share must lie in [0, 1]");
    c.require(std::isfinite(k.variable_opex), e, "variable_opex must be finite");
    c.require(share(k.discount_rate), e, "discount_rate must lie in [0, 1]");
}

}  // namespace

std::vector<Violation> validate_system(const EnergySystem& s) {
    std::vector<Violation> out;
    Checker c(out);
    const int steps = s.horizon.step_count;
    c.require(steps >= 1, "horizon", "step_count must be >= 1");
    c.require(std::isfinite(s.horizon.hours_per_step) && s.horizon.hours_per_step > 0.0, "horizon",
              "hours_per_step must be > 0");
    c.require(finite_nonneg(s.carbon_price), "system", "carbon_price must be finite and >= 0");
    if (s.capex_period_fraction)
        c.require(std::isfinite(*s.capex_period_fraction) && *s.capex_period_fraction > 0.0, "system",
                  "capex_period_fraction must be > 0");

    std::set<std::string> ids;
    for (const auto& n : s.nodes) {
        const std::string e = "node " + n.id;
        c.require(!n.id.empty(), e, "id must not be empty");
        c.require(ids.insert(n.id).second, e, "duplicate node id");
        for (Carrier r : kCarriers) {
            const int k = carrier_slot(r);
            c.require(!std::isnan(n.import_limit[k]) && n.import_limit[k] >= 0.0, e,
                      std::string("import_limit for ") + to_string(r) + " must be >= 0");
            c.require(std::isfinite(n.import_price[k]), e, std::string("import_price for ") + to_string(r) + " must be finite");
            c.require(std::isfinite(n.import_emission_factor[k]) && n.import_emission_factor[k] >= 0.0, e,
                      std::string("import_emission_factor for ") + to_string(r) + " must be >= 0");
        }
        c.require(std::isinf(n.import_limit[carrier_slot(Carrier::natural_gas)]), e,
                  "natural_gas import must be unbounded");
    }

    ids.clear();
    for (const auto& t : s.technologies) {
        const std::string e = "technology " + t.id;
        c.require(!t.id.empty(), e, "id must not be empty");
        c.require(ids.insert(t.id).second, e, "duplicate technology id");
        c.require(s.node_index(t.node) >= 0, e, "references unknown node '" + t.node + "'");
        c.require(finite_nonneg(t.existing_size), e, "existing_size must be finite and >= 0");
        c.require(!std::isnan(t.max_size) && t.max_size >= t.existing_size, e, "max_size must be >= existing_size");
        check_cost(c, e, t.cost);
        for (const auto& f : t.emission_factors)
            c.require(std::isfinite(f.t_per_mwh), e, "emission factors must be finite");
        switch (t.kind) {
            case TechKind::renewable: {
                auto it = s.renewable_profiles.find(t.id);
                c.require(it != s.renewable_profiles.end(), e, "renewable profile missing");
                if (it != s.renewable_profiles.end()) check_series(c, e + " profile", it->second, steps);
                c.require(!t.expandable || t.existing_size > 0.0, e,
                          "expandable renewable needs existing_size > 0 to scale its profile");
                break;
            }
            case TechKind::conversion1: break;
            case TechKind::conversion2: {
                const auto& p = t.conversion;
                c.require(efficiency(p.efficiency), e, "efficiency must lie in (0, 1]");
                c.require(!p.inputs.empty(), e, "conversion2 needs at least one input carrier");
                c.require(std::find(p.inputs.begin(), p.inputs.end(), p.output) == p.inputs.end(), e,
                          "output carrier listed among inputs");
                std::set<Carrier> seen(p.inputs.begin(), p.inputs.end());
                c.require(seen.size() == p.inputs.size(), e, "duplicate input carrier");
                for (const auto& [r, k] : p.admix_limits) {
                    c.require(seen.count(r) > 0, e, std::string("admix limit for non-input ") + to_string(r));
                    c.require(share(k), e, "admix shares must lie in [0, 1]");
                }
                break;
            }
            case TechKind::storage1:
            case TechKind::storage2_1:
            case TechKind::storage2_2: {
                const auto& p = t.storage;
                c.require(std::isfinite(p.max_charge_rate) && p.max_charge_rate > 0.0, e, "max_charge_rate must be > 0");
                c.require(std::isfinite(p.max_discharge_rate) && p.max_discharge_rate > 0.0, e,
                          "max_discharge_rate must be > 0");
                c.require(std::isfinite(p.self_discharge) && p.self_discharge >= 0.0 && p.self_discharge < 1.0, e,
                          "self_discharge must lie in [0, 1)");
                c.require(efficiency(p.charge_efficiency), e, "charge_efficiency must lie in (0, 1]");
                c.require(efficiency(p.discharge_efficiency), e, "discharge_efficiency must lie in (0, 1]");
                c.require(finite_nonneg(p.compression_electricity), e, "compression_electricity must be >= 0");
                if (t.kind == TechKind::storage2_1) {
                    auto it = s.hydro_inflows.find(t.id);
                    c.require(it != s.hydro_inflows.end(), e, "inflow series missing");
                    if (it != s.hydro_inflows.end()) check_series(c, e + " inflow", it->second, steps);
                }
                break;
            }
        }
    }
    for (const auto& [id, v] : s.renewable_profiles) {
        const int k = s.tech_index(id);
        c.require(k >= 0 && s.technologies[k].kind == TechKind::renewable, "profile " + id,
                  "references no renewable technology");
    }
    for (const auto& [id, v] : s.hydro_inflows) {
        const int k = s.tech_index(id);
        c.require(k >= 0 && s.technologies[k].kind == TechKind::storage2_1, "inflow " + id,
                  "references no storage2_1 technology");
    }

    ids.clear();
    for (const auto& b : s.branches) {
        const std::string e = "branch " + b.id;
        c.require(!b.id.empty(), e, "id must not be empty");
        c.require(ids.insert(b.id).second, e, "duplicate branch id");
        c.require(s.node_index(b.from_node) >= 0, e, "references unknown node '" + b.from_node + "'");
        c.require(s.node_index(b.to_node) >= 0, e, "references unknown node '" + b.to_node + "'");
        c.require(b.from_node != b.to_node, e, "from_node equals to_node");
        c.require(std::isfinite(b.length_km) && b.length_km > 0.0, e, "length_km must be > 0");
        c.require(finite_nonneg(b.loss_factor_per_km), e, "loss_factor_per_km must be >= 0");
        c.require(b.loss_factor_per_km * b.length_km < 1.0, e, "loss_factor_per_km * length_km must be < 1");
        c.require(finite_nonneg(b.existing_capacity), e, "existing_capacity must be finite and >= 0");
        c.require(!std::isnan(b.max_capacity) && b.max_capacity >= b.existing_capacity, e,
                  "max_capacity must be >= existing_capacity");
        c.require(share(b.fixed_opex_share), e, "fixed_opex_share must lie in [0, 1]");
        c.require(share(b.discount_rate), e, "discount_rate must lie in [0, 1]");
        c.require(std::isfinite(b.variable_opex), e, "variable_opex must be finite");
        const auto& g = b.cost_poly;
        const bool has_capex = g.gamma1 != 0.0 || g.gamma2 != 0.0 || g.gamma3 != 0.0 || g.gamma4 != 0.0;
        c.require(std::isfinite(g.gamma1 + g.gamma2 + g.gamma3 + g.gamma4), e, "cost polynomial must be finite");
        c.require(!has_capex || (std::isfinite(b.lifetime) && b.lifetime > 0.0), e,
                  "lifetime must be > 0 when the cost polynomial is nonzero");
        if (b.integer_block_mw) {
            c.require(std::isfinite(*b.integer_block_mw) && *b.integer_block_mw > 0.0, e, "integer_block_mw must be > 0");
            c.require(!b.expandable || std::isfinite(b.max_capacity), e, "integer blocks need a finite max_capacity");
        }
        if (is_pipeline(b.kind)) {
            c.require(b.carrier == Carrier::hydrogen, e, "pipelines carry hydrogen");
            c.require(!b.bidirectional, e, "pipelines are unidirectional");
            if (b.compression) {
                const auto& p = *b.compression;
                c.require(p.outlet_pressure_bar > 0.0 && p.specific_heat > 0.0 && p.temperature_k > 0.0 &&
                              p.efficiency > 0.0 && p.lower_heating_value > 0.0 && p.reference_pressure_bar > 0.0,
                          e, "compression parameters must be positive");
                c.require(p.heat_capacity_ratio > 1.0, e, "heat_capacity_ratio must be > 1");
                c.require(p.outlet_pressure_bar >= p.reference_pressure_bar, e,
                          "outlet pressure below reference pressure");
            }
        } else {
            c.require(b.carrier == Carrier::electricity, e, "electricity networks carry electricity");
            c.require(b.bidirectional, e, "electricity branches are bidirectional");
            c.require(!b.compression, e, "compression applies to pipelines only");
        }
    }

    std::set<std::pair<std::string, int>> seen_demand;
    for (const auto& d : s.demands) {
        const std::string e = std::string("demand ") + d.node + "/" + to_string(d.carrier);
        c.require(s.node_index(d.node) >= 0, e, "references unknown node");
        c.require(seen_demand.insert({d.node, carrier_slot(d.carrier)}).second, e, "duplicate demand series");
        check_series(c, e, d.values, steps);
    }
    return out;
}

void require_valid(const EnergySystem& system) {
    const auto v = validate_system(system);
    if (v.empty()) return;
    std::string msg = std::to_string(v.size()) + " violation(s):";
    for (const auto& x : v) msg += "\n  " + x.message();
    throw DataError(msg);
}

}  // namespace carrierflow
