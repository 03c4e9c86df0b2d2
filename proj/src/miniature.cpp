#include "carrierflow/miniature.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "carrierflow/errors.hpp"
#include "carrierflow/sparse_problem.hpp"

namespace carrierflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Node make_node(std::string id, std::string country, LocationKind loc) {
    Node n{std::move(id), std::move(country), loc, {}, {}, {}};
    const int el = carrier_slot(Carrier::electricity);
    const int h2 = carrier_slot(Carrier::hydrogen);
    const int ng = carrier_slot(Carrier::natural_gas);
    n.import_limit[ng] = kInf;
    n.import_price[ng] = kNaturalGasPrice;
    if (loc == LocationKind::onshore) {
        n.import_limit[el] = kInf;
        n.import_price[el] = kElectricityImportPrice;
        n.import_emission_factor[el] = kElectricityImportEmission;
        n.import_limit[h2] = kInf;
        n.import_price[h2] = kNaturalGasPrice / kSmrEfficiency;
        n.import_emission_factor[h2] = kBlueHydrogenEmission;
    }
    return n;
}

TechnologyInstance renewable(std::string id, std::string node, double existing, double capex) {
    TechnologyInstance t;
    t.id = std::move(id);
    t.node = std::move(node);
    t.kind = TechKind::renewable;
    t.category = TechCategory::vres;
    t.existing_size = existing;
    t.expandable = true;
    t.max_size = 3.0 * existing;
    t.cost = {capex, 30.0, 0.02, 0.0, 0.04};
    return t;
}

TechnologyInstance battery(std::string id, std::string node, double capex, double max_size) {
    TechnologyInstance t;
    t.id = std::move(id);
    t.node = std::move(node);
    t.kind = TechKind::storage1;
    t.category = TechCategory::battery;
    t.expandable = true;
    t.max_size = max_size;
    t.storage = {Carrier::electricity, 0.333, 0.333, 4.168e-5, 0.985, 0.975, 0.0};
    t.cost = {capex, 25.0, 0.0791, 1.80, 0.04};
    return t;
}

TechnologyInstance electrolyzer(std::string id, std::string node, double capex_per_input_mw) {
    TechnologyInstance t;
    t.id = std::move(id);
    t.node = std::move(node);
    t.kind = TechKind::conversion2;
    t.category = TechCategory::electrolyzer;
    t.expandable = true;
    t.max_size = 600.0;
    t.conversion = {0.655, {Carrier::electricity}, Carrier::hydrogen, {}};
    // Sizes are output MW.
    t.cost = {capex_per_input_mw / 0.655, 25.0, 0.02, 0.0, 0.04};
    return t;
}

}  // namespace

EnergySystem build_miniature_system(std::uint64_t seed, int steps) {
    if (steps < 1) throw DomainError("step count must be >= 1");
    EnergySystem s;
    s.name = "miniature";
    s.horizon = {steps, 1.0};
    s.carbon_price = kCarbonPrice2030;

    s.nodes = {make_node("N1", "DE", LocationKind::onshore), make_node("N2", "DE", LocationKind::onshore),
               make_node("N3", "NL", LocationKind::onshore), make_node("OFF", "DE", LocationKind::offshore)};

    TechnologyInstance gas;
    gas.id = "n1_gas";
    gas.node = "N1";
    gas.kind = TechKind::conversion2;
    gas.category = TechCategory::gas_plant;
    gas.existing_size = 900.0;
    gas.max_size = 900.0;
    gas.conversion = {kGasPlantEfficiency, {Carrier::natural_gas, Carrier::hydrogen}, Carrier::electricity,
                      {{Carrier::hydrogen, 0.05}}};
    gas.emission_factors = {
        {FlowDirection::input, Carrier::natural_gas, kGasPlantEmissionPerMwhEl * kGasPlantEfficiency}};
    gas.cost.variable_opex = 4.20;
    s.technologies.push_back(gas);

    TechnologyInstance nuclear;
    nuclear.id = "n3_nuclear";
    nuclear.node = "N3";
    nuclear.kind = TechKind::conversion1;
    nuclear.existing_size = 300.0;
    nuclear.max_size = 300.0;
    nuclear.cost.variable_opex = 16.90;
    s.technologies.push_back(nuclear);

    s.technologies.push_back(renewable("n2_wind_onshore", "N2", 400.0, 1100.0));
    s.technologies.push_back(renewable("off_wind", "OFF", 1200.0, 1800.0));

    TechnologyInstance hydro;
    hydro.id = "n2_hydro";
    hydro.node = "N2";
    hydro.kind = TechKind::storage2_1;
    hydro.existing_size = 2000.0;
    hydro.max_size = 2000.0;
    hydro.storage = {Carrier::electricity, 0.1, 0.1, 0.0, 0.89, 0.89, 0.0};
    s.technologies.push_back(hydro);

    s.technologies.push_back(battery("n1_battery", "N1", 622.0, 20000.0));
    s.technologies.push_back(battery("off_battery", "OFF", 746.0, 200000.0));
    s.technologies.push_back(electrolyzer("n1_electrolyzer", "N1", 650.0));
    s.technologies.push_back(electrolyzer("off_electrolyzer", "OFF", 780.0));

    TechnologyInstance fc;
    fc.id = "n1_fuel_cell";
    fc.node = "N1";
    fc.kind = TechKind::conversion2;
    fc.category = TechCategory::fuel_cell;
    fc.expandable = true;
    fc.max_size = 400.0;
    fc.conversion = {0.5, {Carrier::hydrogen}, Carrier::electricity, {}};
    fc.cost = {1100.0, 10.0, 0.05, 0.0, 0.04};
    s.technologies.push_back(fc);

    TechnologyInstance cavern;
    cavern.id = "n1_cavern";
    cavern.node = "N1";
    cavern.kind = TechKind::storage2_2;
    cavern.category = TechCategory::h2_storage;
    cavern.expandable = true;
    cavern.max_size = 50000.0;
    cavern.storage = {Carrier::hydrogen, 0.333, 0.333, 0.0, 0.99, 1.0, 0.008};
    cavern.cost = {2.0, 100.0, 0.0, 0.0, 0.04};
    s.technologies.push_back(cavern);

    auto ac = [](std::string id, std::string from, std::string to, double km, double existing, double max) {
        NetworkBranch b;
        b.id = std::move(id);
        b.kind = NetworkKind::electricity_ac;
        b.from_node = std::move(from);
        b.to_node = std::move(to);
        b.length_km = km;
        b.existing_capacity = existing;
        b.expandable = true;
        b.max_capacity = max;
        b.loss_factor_per_km = 7e-5;
        b.cost_poly = {0.0, 43.7, 0.0, 0.4};
        b.fixed_opex_share = 0.04;
        return b;
    };
    auto dc = [](std::string id, std::string from, std::string to, double km, double existing) {
        NetworkBranch b;
        b.id = std::move(id);
        b.kind = NetworkKind::electricity_dc;
        b.from_node = std::move(from);
        b.to_node = std::move(to);
        b.length_km = km;
        b.existing_capacity = existing;
        b.expandable = true;
        b.integer_block_mw = 250.0;
        b.max_capacity = existing + 3 * 250.0;
        b.loss_factor_per_km = 4e-5;
        b.cost_poly = {0.0, 68.1, 0.0, 0.1};
        b.fixed_opex_share = 0.04;
        return b;
    };
    s.branches.push_back(ac("ac_n1_n2", "N1", "N2", 150.0, 300.0, 1500.0));
    s.branches.push_back(ac("ac_n2_n3", "N2", "N3", 200.0, 200.0, 1200.0));
    s.branches.push_back(dc("dc_off_n1", "OFF", "N1", 120.0, 500.0));
    s.branches.push_back(dc("dc_off_n3", "OFF", "N3", 180.0, 0.0));
    for (const auto& [from, to] : {std::pair{"OFF", "N1"}, std::pair{"N1", "OFF"}}) {
        NetworkBranch p;
        p.id = std::string("h2_") + from + "_" + to;
        p.kind = NetworkKind::pipeline_offshore;
        p.carrier = Carrier::hydrogen;
        p.from_node = from;
        p.to_node = to;
        p.length_km = 120.0;
        p.expandable = true;
        p.max_capacity = 1000.0;
        p.loss_factor_per_km = 4e-5;
        p.bidirectional = false;
        p.cost_poly = {337045.7, -33.1, 0.0, 0.5};
        p.fixed_opex_share = 0.04;
        p.lifetime = 50.0;
        p.compression = CompressionParams{};
        s.branches.push_back(p);
    }

    std::vector<double> onshore(steps), offshore(steps), inflow(steps, 40.0);
    for (int t = 0; t < steps; ++t) {
        const double phase = kTwoPi * t / 24.0;
        onshore[t] = 400.0 * (0.35 + 0.25 * std::cos(phase + 1.0) + 0.1 * std::sin(kTwoPi * t / 67.0));
        offshore[t] = 1200.0 * (0.55 + 0.35 * std::sin(phase + 0.5) + 0.05 * std::cos(kTwoPi * t / 41.0));
    }
    s.renewable_profiles["n2_wind_onshore"] = onshore;
    s.renewable_profiles["off_wind"] = offshore;
    s.hydro_inflows["n2_hydro"] = inflow;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    const std::pair<const char*, double> electric[] = {{"N1", 850.0}, {"N2", 300.0}, {"N3", 550.0}};
    for (const auto& [node, mean] : electric) {
        DemandSeries d{node, Carrier::electricity, std::vector<double>(steps)};
        for (int t = 0; t < steps; ++t) {
            const double shape = 1.0 + 0.2 * std::sin(kTwoPi * (t - 6) / 24.0);
            d.values[t] = mean * shape * (1.0 + jitter(rng));
        }
        s.demands.push_back(std::move(d));
    }
    s.demands.push_back({"N1", Carrier::hydrogen, std::vector<double>(steps, 100.0)});
    s.demands.push_back({"N3", Carrier::hydrogen, std::vector<double>(steps, 60.0)});
    return s;
}

}  // namespace carrierflow
