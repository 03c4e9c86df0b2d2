#include "carrierflow/results_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "carrierflow/errors.hpp"
#include "carrierflow/system_io.hpp"

namespace carrierflow {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::optional<double> opt_from(const ordered_json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

ordered_json metrics_json(const Metrics& m) {
    ordered_json j;
    j["renewable_share"] = m.renewable_share;
    j["renewable_available"] = m.renewable_available;
    j["renewable_dispatched"] = m.renewable_dispatched;
    j["curtailment_share"] = m.curtailment_share;
    ordered_json sup = ordered_json::object();
    for (const auto& [country, s] : m.supply)
        sup[country] = {{"renewable", s.renewable},
                        {"conventional", s.conventional},
                        {"storage", s.storage},
                        {"imports", s.imports},
                        {"cross_border", s.cross_border}};
    j["supply"] = sup;
    j["capacity_factor"] = ordered_json(m.capacity_factor);
    const auto& h = m.hydrogen;
    j["hydrogen"] = {{"produced", h.produced},
                     {"reconverted", h.reconverted},
                     {"stored", h.stored},
                     {"transported", h.transported},
                     {"direct_use", h.direct_use}};
    j["import_share"] = ordered_json(m.import_share);
    return j;
}

Metrics metrics_from(const ordered_json& j) {
    Metrics m;
    m.renewable_share = j.at("renewable_share").get<double>();
    m.renewable_available = j.at("renewable_available").get<double>();
    m.renewable_dispatched = j.at("renewable_dispatched").get<double>();
    m.curtailment_share = j.at("curtailment_share").get<double>();
    for (const auto& [country, s] : j.at("supply").items())
        m.supply[country] = {s.at("renewable").get<double>(), s.at("conventional").get<double>(),
                             s.at("storage").get<double>(), s.at("imports").get<double>(),
                             s.at("cross_border").get<double>()};
    m.capacity_factor = j.at("capacity_factor").get<std::map<std::string, double>>();
    const auto& h = j.at("hydrogen");
    m.hydrogen = {h.at("produced").get<double>(), h.at("reconverted").get<double>(), h.at("stored").get<double>(),
                  h.at("transported").get<double>(), h.at("direct_use").get<double>()};
    m.import_share = j.at("import_share").get<std::map<std::string, double>>();
    return m;
}

}  // namespace

std::string outcome_to_json(const ScenarioOutcome& o) {
    ordered_json j;
    j["scenario"] = o.scenario_id;
    j["mode"] = o.mode;
    j["system_digest"] = o.system_digest;
    j["status"] = o.status;
    j["objective"] = o.objective;
    j["emissions"] = {{"E_tec", o.emissions.tec}, {"E_imp", o.emissions.imp}, {"total", o.emissions.total}};
    j["costs"] = {{"C_tec", o.costs.tec},
                  {"C_netw", o.costs.netw},
                  {"C_imp", o.costs.imp},
                  {"C_CO2", o.costs.co2},
                  {"total", o.costs.total}};
    j["shadow_carbon_price"] = opt(o.shadow_carbon_price);
    j["mip_gap"] = o.mip_gap;
    j["iterations"] = o.iterations;
    j["nodes"] = o.nodes;
    j["warm_start_stages"] = o.warm_start_stages;
    j["metrics"] = metrics_json(o.metrics);
    ordered_json caps = ordered_json::array();
    for (const auto& c : o.new_capacities)
        caps.push_back({{"entity", c.entity},
                        {"group", c.group},
                        {"location", to_string(c.location)},
                        {"size", c.size},
                        {"unit", c.unit}});
    j["new_capacities"] = caps;
    ordered_json table = ordered_json::array();
    for (const auto& c : o.capacity_table)
        table.push_back({{"group", c.group}, {"location", to_string(c.location)}, {"size", c.size}, {"unit", c.unit}});
    j["capacity_table"] = table;
    j["sizes"] = ordered_json(o.sizes);
    return j.dump(2) + '\n';
}

ScenarioOutcome outcome_from_json(const std::string& text) {
    try {
        const auto j = ordered_json::parse(text);
        ScenarioOutcome o;
        o.scenario_id = j.at("scenario").get<std::string>();
        o.mode = j.at("mode").get<std::string>();
        o.system_digest = j.at("system_digest").get<std::string>();
        o.status = j.at("status").get<std::string>();
        o.objective = j.at("objective").get<double>();
        const auto& e = j.at("emissions");
        o.emissions = {e.at("E_tec").get<double>(), e.at("E_imp").get<double>(), e.at("total").get<double>()};
        const auto& c = j.at("costs");
        o.costs = {c.at("C_tec").get<double>(), c.at("C_netw").get<double>(), c.at("C_imp").get<double>(),
                   c.at("C_CO2").get<double>(), c.at("total").get<double>()};
        o.shadow_carbon_price = opt_from(j.at("shadow_carbon_price"));
        o.mip_gap = j.at("mip_gap").get<double>();
        o.iterations = j.at("iterations").get<long>();
        o.nodes = j.at("nodes").get<long>();
        o.warm_start_stages = j.at("warm_start_stages").get<std::vector<std::string>>();
        o.metrics = metrics_from(j.at("metrics"));
        for (const auto& x : j.at("new_capacities"))
            o.new_capacities.push_back({x.at("entity").get<std::string>(), x.at("group").get<std::string>(),
                                        parse_location(x.at("location").get<std::string>()),
                                        x.at("size").get<double>(), x.at("unit").get<std::string>()});
        for (const auto& x : j.at("capacity_table"))
            o.capacity_table.push_back({x.at("group").get<std::string>(),
                                        parse_location(x.at("location").get<std::string>()),
                                        x.at("size").get<double>(), x.at("unit").get<std::string>()});
        o.sizes = j.at("sizes").get<SizeMap>();
        return o;
    } catch (const ordered_json::exception& e) {
        throw DataError(std::string("malformed result JSON: ") + e.what());
    }
}

std::string curve_to_json(const AbatementCurve& c) {
    ordered_json j;
    j["scenario"] = c.scenario_id;
    j["reference_cost"] = c.reference_cost;
    j["reference_emissions"] = c.reference_emissions;
    ordered_json pts = ordered_json::array();
    for (const auto& p : c.points)
        pts.push_back({{"target_fraction", p.target_fraction},
                       {"emission_cap", p.emission_cap},
                       {"status", p.status},
                       {"cost", opt(p.cost)},
                       {"emissions", opt(p.emissions)},
                       {"abatement_cost", opt(p.abatement_cost)}});
    j["points"] = pts;
    return j.dump(2) + '\n';
}

AbatementCurve curve_from_json(const std::string& text) {
    try {
        const auto j = ordered_json::parse(text);
        AbatementCurve c;
        c.scenario_id = j.at("scenario").get<std::string>();
        c.reference_cost = j.at("reference_cost").get<double>();
        c.reference_emissions = j.at("reference_emissions").get<double>();
        for (const auto& p : j.at("points"))
            c.points.push_back({p.at("target_fraction").get<double>(), p.at("emission_cap").get<double>(),
                                p.at("status").get<std::string>(), opt_from(p.at("cost")),
                                opt_from(p.at("emissions")), opt_from(p.at("abatement_cost"))});
        return c;
    } catch (const ordered_json::exception& e) {
        throw DataError(std::string("malformed curve JSON: ") + e.what());
    }
}

std::string capacities_csv(const ScenarioOutcome& o) {
    std::string out = "group,location,new_capacity,unit\n";
    for (const auto& r : o.capacity_table)
        out += r.group + "," + to_string(r.location) + "," + format_double(r.size) + "," + r.unit + "\n";
    return out;
}

std::string frontier_csv(const AbatementCurve& c) {
    auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    std::string out = "target_fraction,emission_cap,cost,emissions,abatement_cost,status\n";
    for (const auto& p : c.points)
        out += format_double(p.target_fraction) + "," + format_double(p.emission_cap) + "," + cell(p.cost) + "," +
               cell(p.emissions) + "," + cell(p.abatement_cost) + "," + p.status + "\n";
    return out;
}

void write_text_file(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void export_results(const ScenarioOutcome& o, const fs::path& dir, const std::optional<AbatementCurve>& curve) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    write_text_file(dir / "result.json", outcome_to_json(o));
    write_text_file(dir / "capacities.csv", capacities_csv(o));
    if (curve) {
        write_text_file(dir / "frontier.csv", frontier_csv(*curve));
        write_text_file(dir / "curve.json", curve_to_json(*curve));
    }
}

}  // namespace carrierflow
