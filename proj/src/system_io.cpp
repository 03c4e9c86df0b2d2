#include "carrierflow/system_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "carrierflow/errors.hpp"
#include "carrierflow/sparse_problem.hpp"
#include "csv_table.hpp"

namespace carrierflow {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace {

const std::vector<std::string> kNodeColumns{"id", "country", "location"};

const std::vector<std::string> kTechColumns{
    "id", "node", "kind", "category", "existing_size", "expandable", "max_size", "output_carrier",
    "efficiency", "inputs", "conversion_output", "admix_limits", "storage_carrier", "max_charge_rate",
    "max_discharge_rate", "self_discharge", "charge_efficiency", "discharge_efficiency",
    "compression_electricity", "emission_factors", "capex_per_size", "lifetime", "fixed_opex_share",
    "variable_opex", "discount_rate"};

const std::vector<std::string> kBranchColumns{
    "id", "kind", "carrier", "from_node", "to_node", "length_km", "existing_capacity", "expandable",
    "max_capacity", "integer_block_mw", "loss_factor_per_km", "bidirectional", "gamma1", "gamma2", "gamma3",
    "gamma4", "fixed_opex_share", "lifetime", "discount_rate", "variable_opex", "outlet_pressure_bar",
    "specific_heat", "temperature_k", "compression_efficiency", "heat_capacity_ratio", "lower_heating_value",
    "reference_pressure_bar"};

const std::map<std::string, std::string> kUnits{{"power", "MW"},          {"energy", "MWh"},
                                                {"cost", "EUR"},          {"investment", "kEUR"},
                                                {"emissions", "t"},       {"length", "km"},
                                                {"pressure", "bar"},      {"temperature", "K"}};

std::string demand_file(Carrier c) { return std::string("demand_") + to_string(c) + ".csv"; }

std::string join(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
    }
    return s + '\n';
}

std::string flag(bool b) { return b ? "true" : "false"; }

// ---- writing ----

std::string render_nodes(const EnergySystem& s) {
    std::string out = join(kNodeColumns);
    for (const auto& n : s.nodes) out += join({n.id, n.country, to_string(n.location)});
    return out;
}

std::string render_technologies(const EnergySystem& s) {
    std::string out = join(kTechColumns);
    for (const auto& t : s.technologies) {
        std::string inputs, admix, factors;
        for (Carrier c : t.conversion.inputs) inputs += (inputs.empty() ? "" : ";") + std::string(to_string(c));
        for (const auto& [c, v] : t.conversion.admix_limits)
            admix += (admix.empty() ? "" : ";") + std::string(to_string(c)) + ":" + format_double(v);
        for (const auto& f : t.emission_factors)
            factors += (factors.empty() ? "" : ";") +
                       std::string(f.direction == FlowDirection::input ? "input" : "output") + ":" +
                       to_string(f.carrier) + ":" + format_double(f.t_per_mwh);
        const auto& st = t.storage;
        const auto& c = t.cost;
        out += join({t.id, t.node, to_string(t.kind), to_string(t.category), format_double(t.existing_size),
                     flag(t.expandable), format_double(t.max_size), to_string(t.output_carrier),
                     format_double(t.conversion.efficiency), inputs, to_string(t.conversion.output), admix,
                     to_string(st.carrier), format_double(st.max_charge_rate), format_double(st.max_discharge_rate),
                     format_double(st.self_discharge), format_double(st.charge_efficiency),
                     format_double(st.discharge_efficiency), format_double(st.compression_electricity), factors,
                     format_double(c.capex_per_size), format_double(c.lifetime), format_double(c.fixed_opex_share),
                     format_double(c.variable_opex), format_double(c.discount_rate)});
    }
    return out;
}

std::string render_branches(const EnergySystem& s) {
    std::string out = join(kBranchColumns);
    for (const auto& b : s.branches) {
        std::vector<std::string> row{b.id,
                                     to_string(b.kind),
                                     to_string(b.carrier),
                                     b.from_node,
                                     b.to_node,
                                     format_double(b.length_km),
                                     format_double(b.existing_capacity),
                                     flag(b.expandable),
                                     format_double(b.max_capacity),
                                     b.integer_block_mw ? format_double(*b.integer_block_mw) : "",
                                     format_double(b.loss_factor_per_km),
                                     flag(b.bidirectional),
                                     format_double(b.cost_poly.gamma1),
                                     format_double(b.cost_poly.gamma2),
                                     format_double(b.cost_poly.gamma3),
                                     format_double(b.cost_poly.gamma4),
                                     format_double(b.fixed_opex_share),
                                     format_double(b.lifetime),
                                     format_double(b.discount_rate),
                                     format_double(b.variable_opex)};
        if (b.compression) {
            const auto& k = *b.compression;
            for (double v : {k.outlet_pressure_bar, k.specific_heat, k.temperature_k, k.efficiency,
                             k.heat_capacity_ratio, k.lower_heating_value, k.reference_pressure_bar})
                row.push_back(format_double(v));
        } else {
            row.resize(kBranchColumns.size());
        }
        out += join(row);
    }
    return out;
}

std::string render_series(int steps, const std::vector<std::pair<std::string, const std::vector<double>*>>& cols) {
    std::vector<std::string> header{"step"};
    for (const auto& [name, _] : cols) header.push_back(name);
    std::string out = join(header);
    for (int k = 0; k < steps; ++k) {
        std::vector<std::string> row{std::to_string(k)};
        for (const auto& [_, v] : cols) row.push_back(k < static_cast<int>(v->size()) ? format_double((*v)[k]) : "");
        out += join(row);
    }
    return out;
}

std::string render_manifest(const EnergySystem& s) {
    json m;
    m["name"] = s.name;
    m["step_count"] = s.horizon.step_count;
    m["hours_per_step"] = s.horizon.hours_per_step;
    m["carbon_price"] = s.carbon_price;
    m["capex_period_fraction"] = s.capex_period_fraction ? json(*s.capex_period_fraction) : json(nullptr);
    m["units"] = kUnits;
    json imports = json::array();
    for (const auto& n : s.nodes)
        for (Carrier c : kCarriers) {
            const int k = carrier_slot(c);
            if (n.import_limit[k] == 0.0 && n.import_price[k] == 0.0 && n.import_emission_factor[k] == 0.0) continue;
            json e;
            e["node"] = n.id;
            e["carrier"] = to_string(c);
            e["limit"] = std::isinf(n.import_limit[k]) ? json(nullptr) : json(n.import_limit[k]);
            e["price"] = n.import_price[k];
            e["emission_factor"] = n.import_emission_factor[k];
            imports.push_back(e);
        }
    m["imports"] = imports;
    return m.dump(2) + '\n';
}

// ---- reading ----
using namespace csv;

void read_nodes(const fs::path& dir, EnergySystem& s) {
    const Table t = read_table(dir, "nodes.csv");
    require_columns(t, kNodeColumns);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        RowReader row(t, r);
        Node n;
        n.id = row.text("id");
        n.country = row.text("country");
        n.location = row.parsed("location", [](const std::string& v) { return parse_location(v); });
        s.nodes.push_back(std::move(n));
    }
}

void read_technologies(const fs::path& dir, EnergySystem& s) {
    const Table t = read_table(dir, "technologies.csv");
    require_columns(t, kTechColumns);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        RowReader row(t, r);
        TechnologyInstance x;
        x.id = row.text("id");
        x.node = row.text("node");
        x.kind = row.parsed("kind", [](const std::string& v) { return parse_tech_kind(v); });
        x.category = row.parsed("category", [](const std::string& v) { return parse_tech_category(v); });
        x.existing_size = row.number("existing_size");
        x.expandable = row.boolean("expandable");
        x.max_size = row.number("max_size");
        x.output_carrier = row.parsed("output_carrier", [](const std::string& v) { return parse_carrier(v); });
        x.conversion.efficiency = row.number("efficiency");
        x.conversion.inputs = row.parsed("inputs", [](const std::string& v) {
            std::vector<Carrier> cs;
            for (const auto& c : split_list(v, ';')) cs.push_back(parse_carrier(c));
            return cs;
        });
        x.conversion.output = row.parsed("conversion_output", [](const std::string& v) { return parse_carrier(v); });
        x.conversion.admix_limits = row.parsed("admix_limits", [](const std::string& v) {
            std::map<Carrier, double> m;
            for (const auto& part : split_list(v, ';')) {
                const auto kv = split_list(part, ':');
                if (kv.size() != 2) throw DataError("expected carrier:share, found '" + part + "'");
                m[parse_carrier(kv[0])] = parse_number(kv[1]);
            }
            return m;
        });
        x.storage.carrier = row.parsed("storage_carrier", [](const std::string& v) { return parse_carrier(v); });
        x.storage.max_charge_rate = row.number("max_charge_rate");
        x.storage.max_discharge_rate = row.number("max_discharge_rate");
        x.storage.self_discharge = row.number("self_discharge");
        x.storage.charge_efficiency = row.number("charge_efficiency");
        x.storage.discharge_efficiency = row.number("discharge_efficiency");
        x.storage.compression_electricity = row.number("compression_electricity");
        x.emission_factors = row.parsed("emission_factors", [](const std::string& v) {
            std::vector<EmissionFactor> fs;
            for (const auto& part : split_list(v, ';')) {
                const auto f = split_list(part, ':');
                if (f.size() != 3 || (f[0] != "input" && f[0] != "output"))
                    throw DataError("expected input|output:carrier:t_per_mwh, found '" + part + "'");
                fs.push_back({f[0] == "input" ? FlowDirection::input : FlowDirection::output, parse_carrier(f[1]),
                              parse_number(f[2])});
            }
            return fs;
        });
        x.cost.capex_per_size = row.number("capex_per_size");
        x.cost.lifetime = row.number("lifetime");
        x.cost.fixed_opex_share = row.number("fixed_opex_share");
        x.cost.variable_opex = row.number("variable_opex");
        x.cost.discount_rate = row.number("discount_rate");
        s.technologies.push_back(std::move(x));
    }
}

void read_branches(const fs::path& dir, EnergySystem& s) {
    const Table t = read_table(dir, "branches.csv");
    require_columns(t, kBranchColumns);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        RowReader row(t, r);
        NetworkBranch b;
        b.id = row.text("id");
        b.kind = row.parsed("kind", [](const std::string& v) { return parse_network_kind(v); });
        b.carrier = row.parsed("carrier", [](const std::string& v) { return parse_carrier(v); });
        b.from_node = row.text("from_node");
        b.to_node = row.text("to_node");
        b.length_km = row.number("length_km");
        b.existing_capacity = row.number("existing_capacity");
        b.expandable = row.boolean("expandable");
        b.max_capacity = row.number("max_capacity");
        b.integer_block_mw = row.optional_number("integer_block_mw");
        b.loss_factor_per_km = row.number("loss_factor_per_km");
        b.bidirectional = row.boolean("bidirectional");
        b.cost_poly = {row.number("gamma1"), row.number("gamma2"), row.number("gamma3"), row.number("gamma4")};
        b.fixed_opex_share = row.number("fixed_opex_share");
        b.lifetime = row.number("lifetime");
        b.discount_rate = row.number("discount_rate");
        b.variable_opex = row.number("variable_opex");
        const std::vector<std::string> comp{"outlet_pressure_bar", "specific_heat", "temperature_k",
                                            "compression_efficiency", "heat_capacity_ratio", "lower_heating_value",
                                            "reference_pressure_bar"};
        int filled = 0;
        for (const auto& c : comp) filled += !row.text(c).empty();
        if (filled == static_cast<int>(comp.size())) {
            b.compression = CompressionParams{row.number(comp[0]), row.number(comp[1]), row.number(comp[2]),
                                              row.number(comp[3]), row.number(comp[4]), row.number(comp[5]),
                                              row.number(comp[6])};
        } else if (filled > 0) {
            for (const auto& c : comp)
                if (row.text(c).empty()) row.fail(c, "compression parameters must be all present or all empty");
        }
        s.branches.push_back(std::move(b));
    }
}

/// Series table with a step column; returns column name -> values.
std::vector<std::pair<std::string, std::vector<double>>> read_series(const fs::path& dir, const std::string& file,
                                                                     int steps) {
    const Table t = read_table(dir, file);
    if (t.header.empty() || t.header[0] != "step") throw SchemaError(file, 1, "step", "first column must be step");
    if (static_cast<int>(t.rows.size()) != steps)
        throw SchemaError(file, static_cast<int>(t.rows.size()) + 2, "",
                          "expected " + std::to_string(steps) + " rows, found " + std::to_string(t.rows.size()));
    std::vector<std::pair<std::string, std::vector<double>>> out;
    for (std::size_t c = 1; c < t.header.size(); ++c) {
        if (t.header[c].empty()) throw SchemaError(file, 1, "", "empty column name");
        out.push_back({t.header[c], std::vector<double>(steps)});
    }
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        RowReader row(t, r);
        if (row.number("step") != static_cast<double>(r)) row.fail("step", "steps must count 0, 1, 2, ...");
        for (std::size_t c = 1; c < t.header.size(); ++c) out[c - 1].second[r] = row.number(t.header[c]);
    }
    return out;
}

void read_manifest(const fs::path& dir, EnergySystem& s) {
    json m;
    try {
        m = json::parse(slurp(dir / "manifest.json"));
    } catch (const json::parse_error& e) {
        throw SchemaError("manifest.json", 0, "", e.what());
    }
    const std::set<std::string> known{"name",  "step_count", "hours_per_step", "carbon_price",
                                      "capex_period_fraction", "units", "imports"};
    for (const auto& [k, _] : m.items())
        if (!known.count(k)) throw SchemaError("manifest.json", 0, k, "unknown field");
    auto field = [&](const char* k) -> const json& {
        if (!m.contains(k)) throw SchemaError("manifest.json", 0, k, "missing field");
        return m.at(k);
    };
    try {
        s.name = m.value("name", std::string("system"));
        s.horizon.step_count = field("step_count").get<int>();
        s.horizon.hours_per_step = field("hours_per_step").get<double>();
        s.carbon_price = field("carbon_price").get<double>();
        if (m.contains("capex_period_fraction") && !m["capex_period_fraction"].is_null())
            s.capex_period_fraction = m["capex_period_fraction"].get<double>();
        if (m.contains("units")) {
            for (const auto& [k, v] : m["units"].items()) {
                auto it = kUnits.find(k);
                if (it == kUnits.end()) throw SchemaError("manifest.json", 0, "units." + k, "unknown quantity");
                if (v.get<std::string>() != it->second)
                    throw SchemaError("manifest.json", 0, "units." + k,
                                      "unit mismatch: expected " + it->second + ", found " + v.get<std::string>());
            }
        }
    } catch (const json::exception& e) {
        throw SchemaError("manifest.json", 0, "", e.what());
    }
    if (!m.contains("imports")) return;
    int i = 0;
    for (const auto& e : m["imports"]) {
        const std::string where = "imports[" + std::to_string(i++) + "]";
        try {
            const std::string node = e.at("node").get<std::string>();
            const int n = s.node_index(node);
            if (n < 0) throw SchemaError("manifest.json", 0, where + ".node", "unknown node '" + node + "'");
            Carrier c;
            try {
                c = parse_carrier(e.at("carrier").get<std::string>());
            } catch (const DataError& err) {
                throw SchemaError("manifest.json", 0, where + ".carrier", err.what());
            }
            const int k = carrier_slot(c);
            const auto& lim = e.at("limit");
            s.nodes[n].import_limit[k] = lim.is_null() ? kInf : lim.get<double>();
            s.nodes[n].import_price[k] = e.at("price").get<double>();
            s.nodes[n].import_emission_factor[k] = e.at("emission_factor").get<double>();
        } catch (const json::exception& err) {
            throw SchemaError("manifest.json", 0, where, err.what());
        }
    }
}

}  // namespace

std::map<std::string, std::string> render_system_files(const EnergySystem& s) {
    std::map<std::string, std::string> files;
    files["manifest.json"] = render_manifest(s);
    files["nodes.csv"] = render_nodes(s);
    files["technologies.csv"] = render_technologies(s);
    files["branches.csv"] = render_branches(s);
    for (Carrier c : kCarriers) {
        std::vector<std::pair<std::string, const std::vector<double>*>> cols;
        std::vector<std::vector<double>> zeros;
        zeros.reserve(s.nodes.size());
        bool any = false;
        for (const auto& n : s.nodes) {
            const DemandSeries* found = nullptr;
            for (const auto& d : s.demands)
                if (d.node == n.id && d.carrier == c) found = &d;
            if (found) {
                any = true;
                cols.push_back({n.id, &found->values});
            } else {
                zeros.emplace_back(s.horizon.step_count, 0.0);
                cols.push_back({n.id, &zeros.back()});
            }
        }
        if (any) files[demand_file(c)] = render_series(s.horizon.step_count, cols);
    }
    std::vector<std::pair<std::string, const std::vector<double>*>> prof, inflow;
    for (const auto& [id, v] : s.renewable_profiles) prof.push_back({id, &v});
    for (const auto& [id, v] : s.hydro_inflows) inflow.push_back({id, &v});
    files["profiles.csv"] = render_series(s.horizon.step_count, prof);
    files["inflows.csv"] = render_series(s.horizon.step_count, inflow);
    return files;
}

void write_system_files(const EnergySystem& s, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    for (const auto& [name, content] : render_system_files(s)) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw IoError("cannot write " + (dir / name).string());
        out << content;
        if (!out) throw IoError("write failed for " + (dir / name).string());
    }
}

EnergySystem read_system_files(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    EnergySystem s;
    read_nodes(dir, s);
    read_manifest(dir, s);
    read_technologies(dir, s);
    read_branches(dir, s);
    const int steps = s.horizon.step_count;
    if (steps < 1) throw SchemaError("manifest.json", 0, "step_count", "must be >= 1");
    for (Carrier c : kCarriers) {
        const std::string file = demand_file(c);
        if (!fs::exists(dir / file)) continue;
        auto cols = read_series(dir, file, steps);
        for (const auto& n : s.nodes) {
            bool present = false;
            for (const auto& [name, _] : cols) present = present || name == n.id;
            if (!present) throw SchemaError(file, 1, n.id, "missing demand column for node");
        }
        for (const auto& [name, _] : cols)
            if (s.node_index(name) < 0) throw SchemaError(file, 1, name, "unknown node");
        for (const auto& n : s.nodes)
            for (auto& [name, values] : cols) {
                if (name != n.id) continue;
                bool nonzero = false;
                for (double v : values) nonzero = nonzero || v != 0.0;
                if (nonzero) s.demands.push_back({n.id, c, std::move(values)});
            }
    }
    for (auto& [id, v] : read_series(dir, "profiles.csv", steps)) s.renewable_profiles[id] = std::move(v);
    for (auto& [id, v] : read_series(dir, "inflows.csv", steps)) s.hydro_inflows[id] = std::move(v);
    return s;
}

EnergySystem parse_system_files(const fs::path& dir) {
    EnergySystem s = read_system_files(dir);
    require_valid(s);
    return s;
}

std::string system_digest(const EnergySystem& s) {
    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&](const std::string& text) {
        for (unsigned char ch : text) {
            h ^= ch;
            h *= 1099511628211ull;
        }
    };
    for (const auto& [name, content] : render_system_files(s)) {
        feed(name);
        feed(std::string(1, '\0'));
        feed(content);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace carrierflow
