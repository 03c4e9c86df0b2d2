#include "carrierflow/metrics.hpp"

#include <algorithm>

#include "carrierflow/scenario_spec.hpp"

namespace carrierflow {

bool operator==(const CountrySupply& a, const CountrySupply& b) {
    return a.renewable == b.renewable && a.conventional == b.conventional && a.storage == b.storage &&
           a.imports == b.imports && a.cross_border == b.cross_border;
}

bool operator==(const HydrogenUse& a, const HydrogenUse& b) {
    return a.produced == b.produced && a.reconverted == b.reconverted && a.stored == b.stored &&
           a.transported == b.transported && a.direct_use == b.direct_use;
}

namespace {

double value(const std::vector<double>& x, int col) { return col >= 0 ? x[col] : 0.0; }

double total_size(const TechnologyInstance& t, const VariableIndex& idx, int ti, const std::vector<double>& x) {
    return t.existing_size + value(x, idx.tech_size(ti));
}

double series_sum(const VariableIndex& idx, const std::vector<double>& x, auto column_of) {
    double s = 0.0;
    for (int k = 0; k < idx.steps(); ++k) s += value(x, column_of(k));
    return s;
}

}  // namespace

Metrics compute_metrics(const EnergySystem& s, const VariableIndex& idx, const std::vector<double>& x) {
    Metrics m;
    const int steps = idx.steps();
    const double h = s.horizon.hours_per_step;
    for (const auto& n : s.nodes) m.supply[n.country];

    for (int ti = 0; ti < static_cast<int>(s.technologies.size()); ++ti) {
        const auto& t = s.technologies[ti];
        if (!is_active(t)) continue;
        const std::string& country = s.node(t.node).country;
        auto& sup = m.supply[country];
        const double size = total_size(t, idx, ti, x);
        if (t.is_storage()) {
            const double out = series_sum(idx, x, [&](int k) { return idx.tech(ti, VarRole::discharge, t.storage.carrier, k); });
            if (t.storage.carrier == Carrier::electricity) sup.storage += out;
            if (t.category == TechCategory::h2_storage || t.storage.carrier == Carrier::hydrogen)
                m.hydrogen.stored += series_sum(idx, x, [&](int k) { return idx.tech(ti, VarRole::charge, Carrier::hydrogen, k); });
            continue;
        }
        const Carrier out_c = t.kind == TechKind::conversion2 ? t.conversion.output : t.output_carrier;
        const double out = series_sum(idx, x, [&](int k) { return idx.tech(ti, VarRole::output, out_c, k); });
        if (size > 0.0) m.capacity_factor[t.id] = out / (size * h * steps);
        if (out_c == Carrier::electricity) (t.category == TechCategory::vres ? sup.renewable : sup.conventional) += out;
        if (t.kind == TechKind::renewable && t.existing_size > 0.0) {
            const auto it = s.renewable_profiles.find(t.id);
            if (it != s.renewable_profiles.end()) {
                double avail = 0.0;
                for (int k = 0; k < steps; ++k) avail += it->second[k];
                m.renewable_available += avail * size / t.existing_size;
            }
            m.renewable_dispatched += out;
        }
        if (t.category == TechCategory::electrolyzer && out_c == Carrier::hydrogen) m.hydrogen.produced += out;
        if (t.kind == TechKind::conversion2 && out_c == Carrier::electricity)
            for (Carrier c : t.conversion.inputs)
                if (c == Carrier::hydrogen)
                    m.hydrogen.reconverted += series_sum(idx, x, [&](int k) { return idx.tech(ti, VarRole::input, c, k); });
    }

    for (int bi = 0; bi < static_cast<int>(s.branches.size()); ++bi) {
        const auto& b = s.branches[bi];
        if (!is_active(b)) continue;
        const int dirs = b.bidirectional ? 2 : 1;
        for (int d = 0; d < dirs; ++d) {
            const double sent = series_sum(idx, x, [&](int k) { return idx.branch(bi, VarRole::sent, d, k); });
            const double recv = series_sum(idx, x, [&](int k) { return idx.branch(bi, VarRole::received, d, k); });
            if (b.carrier == Carrier::hydrogen) m.hydrogen.transported += sent;
            if (b.carrier != Carrier::electricity) continue;
            const Node& from = s.node(d == kForward ? b.from_node : b.to_node);
            const Node& to = s.node(d == kForward ? b.to_node : b.from_node);
            if (from.country != to.country) m.supply[to.country].cross_border += recv;
        }
    }

    PerCarrier<double> imports{}, demand{};
    for (int n = 0; n < static_cast<int>(s.nodes.size()); ++n)
        for (Carrier c : kCarriers) {
            const double imp = series_sum(idx, x, [&](int k) { return idx.import_flow(n, c, k); });
            imports[carrier_slot(c)] += imp;
            if (c == Carrier::electricity) m.supply[s.nodes[n].country].imports += imp;
        }
    for (const auto& d : s.demands)
        for (double v : d.values) demand[carrier_slot(d.carrier)] += v;
    for (Carrier c : kCarriers) {
        const int k = carrier_slot(c);
        if (demand[k] > 0.0) m.import_share[to_string(c)] = imports[k] / demand[k];
    }

    double ren = 0.0, tot = 0.0;
    for (const auto& [_, sup] : m.supply) {
        ren += sup.renewable;
        tot += sup.total();
    }
    m.renewable_share = tot > 0.0 ? ren / tot : 0.0;
    m.curtailment_share = m.renewable_available > 0.0
                              ? std::max(0.0, m.renewable_available - m.renewable_dispatched) / m.renewable_available
                              : 0.0;
    m.hydrogen.direct_use = std::max(0.0, m.hydrogen.produced - m.hydrogen.reconverted);
    return m;
}

std::vector<NewCapacity> new_capacities(const EnergySystem& s, const VariableIndex& idx, const std::vector<double>& x) {
    std::vector<NewCapacity> out;
    for (int ti = 0; ti < static_cast<int>(s.technologies.size()); ++ti) {
        const auto& t = s.technologies[ti];
        const double v = value(x, idx.tech_size(ti));
        if (v <= 1e-9) continue;
        const std::string group =
            t.category == TechCategory::generic ? std::string(to_string(t.kind)) : std::string(to_string(t.category));
        out.push_back({t.id, group, s.node(t.node).location, v, t.is_storage() ? "MWh" : "MW"});
    }
    for (int bi = 0; bi < static_cast<int>(s.branches.size()); ++bi) {
        const auto& b = s.branches[bi];
        const int col = idx.branch_size(bi, kForward);
        if (col < 0) continue;
        const double v = x[col] * idx.branch_size_unit(bi);
        if (v <= 1e-9) continue;
        out.push_back({b.id, to_string(b.kind),
                       branch_is_offshore(s, b) ? LocationKind::offshore : LocationKind::onshore, v, "MW"});
    }
    return out;
}

std::vector<CapacityRow> aggregate_capacities(const std::vector<NewCapacity>& items) {
    std::map<std::pair<std::string, int>, CapacityRow> rows;
    for (const auto& c : items) {
        auto& r = rows[{c.group, static_cast<int>(c.location)}];
        r.group = c.group;
        r.location = c.location;
        r.unit = c.unit;
        r.size += c.size;
    }
    std::vector<CapacityRow> out;
    for (auto& [_, r] : rows) out.push_back(r);
    return out;
}

}  // namespace carrierflow
