#include "carrierflow/costing.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "carrierflow/errors.hpp"

namespace carrierflow {

ObjectiveMode ObjectiveMode::with_cap(double cap) {
    if (!(cap >= 0.0)) throw DomainError("emission cap must be >= 0");
    return {Kind::min_cost_with_cap, cap};
}

ObjectiveMode ObjectiveMode::parse(std::string_view text) {
    if (text == "min-cost") return min_cost();
    if (text == "min-emissions") return min_emissions();
    if (text.substr(0, 4) == "cap=") {
        const std::string num(text.substr(4));
        char* end = nullptr;
        const double v = std::strtod(num.c_str(), &end);
        if (num.empty() || end != num.c_str() + num.size()) throw DataError("bad emission cap '" + num + "'");
        return with_cap(v);
    }
    throw DataError("unknown mode '" + std::string(text) + "' (min-cost, min-emissions, cap=<t>)");
}

std::string ObjectiveMode::label() const {
    switch (kind) {
        case Kind::min_emissions: return "min-emissions";
        case Kind::min_cost: return "min-cost";
        case Kind::min_cost_with_cap: {
            char buf[40] = "cap=";
            const auto r = std::to_chars(buf + 4, buf + sizeof buf, cap);
            return std::string(buf, r.ptr);
        }
    }
    return "?";
}

double annualize(double capex, double lifetime, double r) {
    if (!(lifetime > 0.0)) throw DomainError("lifetime must be > 0");
    if (r == 0.0) return capex / lifetime;
    if (std::isinf(lifetime)) return capex * r;
    const double g = std::pow(1.0 + r, lifetime);
    return capex * r * g / (g - 1.0);
}

double investment_coefficient(const CostParams& c, double weight) {
    if (c.capex_per_size == 0.0) return 0.0;
    return annualize(c.capex_per_size, c.lifetime, c.discount_rate) * (1.0 + c.fixed_opex_share) * 1000.0 * weight;
}

double network_branch_capex(const NetworkBranch& b, double s) {
    if (!(s > 0.0)) return 0.0;
    const auto& g = b.cost_poly;
    const double d = b.length_km;
    return std::max(0.0, g.gamma1 + g.gamma2 * s + g.gamma3 * d + g.gamma4 * d * s);
}

std::vector<double> CostVectors::total() const {
    std::vector<double> t(tec.size());
    for (std::size_t j = 0; j < t.size(); ++j) t[j] = tec[j] + netw[j] + imp[j] + co2[j];
    return t;
}

std::vector<double> EmissionCoefficients::total() const {
    std::vector<double> t(tec.size());
    for (std::size_t j = 0; j < t.size(); ++j) t[j] = tec[j] + imp[j];
    return t;
}

std::vector<double> technology_cost_terms(const EnergySystem& s, const VariableIndex& idx) {
    std::vector<double> c(idx.size(), 0.0);
    const double w = s.investment_weight();
    for (int ti = 0; ti < static_cast<int>(s.technologies.size()); ++ti) {
        const auto& t = s.technologies[ti];
        if (!is_active(t)) continue;
        const int size = idx.tech_size(ti);
        if (size >= 0) c[size] += investment_coefficient(t.cost, w);
        if (t.cost.variable_opex == 0.0) continue;
        for (const Port& p : technology_ports(t)) {
            if (p.direction != FlowDirection::output) continue;
            for (int k = 0; k < idx.steps(); ++k) c[idx.tech(ti, p.role, p.carrier, k)] += t.cost.variable_opex;
        }
    }
    return c;
}

namespace {

/// EUR per unit of the forward size column and of the build binary.
std::pair<double, double> branch_investment(const NetworkBranch& b, const VariableIndex& idx, int bi, double weight) {
    const int size = idx.branch_size(bi, kForward);
    if (size < 0) return {0.0, 0.0};
    const auto& g = b.cost_poly;
    const double d = b.length_km;
    const double fixed = g.gamma1 + g.gamma3 * d;  // kEUR
    double per_mw = g.gamma2 + g.gamma4 * d;       // kEUR/MW
    const double unit = idx.branch_size_unit(bi);
    const double room_mw = idx.column(size).upper * unit;
    double per_unit = 0.0;
    double build = 0.0;
    if (idx.branch_build(bi) >= 0) {
        // Keep fixed + per_mw * S >= 0 over the whole size range.
        if (room_mw > 0.0 && fixed + per_mw * room_mw < 0.0) per_mw = -fixed / room_mw;
        per_unit = per_mw * unit;
        build = fixed;
    } else {
        const double prorated = b.max_capacity > 0.0 && std::isfinite(b.max_capacity) ? fixed / b.max_capacity : 0.0;
        per_unit = std::max(0.0, prorated + per_mw) * unit;
    }
    auto annual = [&](double kilo_eur) {
        if (kilo_eur == 0.0) return 0.0;
        return annualize(kilo_eur, b.lifetime, b.discount_rate) * (1.0 + b.fixed_opex_share) * 1000.0 * weight;
    };
    return {annual(per_unit), annual(build)};
}

}  // namespace

std::vector<double> network_cost_terms(const EnergySystem& s, const VariableIndex& idx) {
    std::vector<double> c(idx.size(), 0.0);
    const double w = s.investment_weight();
    for (int bi = 0; bi < static_cast<int>(s.branches.size()); ++bi) {
        const auto& b = s.branches[bi];
        if (!is_active(b)) continue;
        const auto [per_unit, build] = branch_investment(b, idx, bi, w);
        const int size = idx.branch_size(bi, kForward);
        if (size >= 0) c[size] += per_unit;
        const int bc = idx.branch_build(bi);
        if (bc >= 0) c[bc] += build;
        if (b.variable_opex != 0.0) {
            const int directions = b.bidirectional ? 2 : 1;
            for (int d = 0; d < directions; ++d)
                for (int k = 0; k < idx.steps(); ++k) c[idx.branch(bi, VarRole::sent, d, k)] += b.variable_opex;
        }
    }
    return c;
}

EmissionCoefficients emission_coefficients(const EnergySystem& s, const VariableIndex& idx) {
    EmissionCoefficients e{std::vector<double>(idx.size(), 0.0), std::vector<double>(idx.size(), 0.0)};
    for (int ti = 0; ti < static_cast<int>(s.technologies.size()); ++ti) {
        const auto& t = s.technologies[ti];
        if (!is_active(t)) continue;
        for (const Port& p : technology_ports(t)) {
            const double f = t.emission_factor(p.direction, p.carrier);
            if (f == 0.0) continue;
            for (int k = 0; k < idx.steps(); ++k) e.tec[idx.tech(ti, p.role, p.carrier, k)] += f;
        }
    }
    for (int n = 0; n < static_cast<int>(s.nodes.size()); ++n)
        for (Carrier c : kCarriers) {
            const double f = s.nodes[n].import_emission_factor[carrier_slot(c)];
            if (f == 0.0) continue;
            for (int k = 0; k < idx.steps(); ++k) {
                const int col = idx.import_flow(n, c, k);
                if (col >= 0) e.imp[col] += f;
            }
        }
    return e;
}

std::vector<double> import_and_carbon_terms(const EnergySystem& s, const VariableIndex& idx) {
    std::vector<double> c(idx.size(), 0.0);
    for (int n = 0; n < static_cast<int>(s.nodes.size()); ++n)
        for (Carrier r : kCarriers)
            for (int k = 0; k < idx.steps(); ++k) {
                const int col = idx.import_flow(n, r, k);
                if (col >= 0) c[col] += s.nodes[n].import_price[carrier_slot(r)];
            }
    const auto e = emission_coefficients(s, idx).total();
    for (int j = 0; j < idx.size(); ++j) c[j] += s.carbon_price * e[j];
    return c;
}

CostVectors cost_vectors(const EnergySystem& s, const VariableIndex& idx) {
    CostVectors v;
    v.tec = technology_cost_terms(s, idx);
    v.netw = network_cost_terms(s, idx);
    v.imp.assign(idx.size(), 0.0);
    for (int n = 0; n < static_cast<int>(s.nodes.size()); ++n)
        for (Carrier r : kCarriers)
            for (int k = 0; k < idx.steps(); ++k) {
                const int col = idx.import_flow(n, r, k);
                if (col >= 0) v.imp[col] += s.nodes[n].import_price[carrier_slot(r)];
            }
    const auto e = emission_coefficients(s, idx).total();
    v.co2.resize(idx.size());
    for (int j = 0; j < idx.size(); ++j) v.co2[j] = s.carbon_price * e[j];
    return v;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& x) {
    if (a.size() != x.size()) throw StructuralError("solution length does not match the variable index");
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
    return s;
}

}  // namespace

EmissionTotals total_emissions(const EnergySystem& s, const VariableIndex& idx, const std::vector<double>& x) {
    const auto e = emission_coefficients(s, idx);
    EmissionTotals t;
    t.tec = dot(e.tec, x);
    t.imp = dot(e.imp, x);
    t.total = t.tec + t.imp;
    return t;
}

CostBreakdown cost_decomposition(const EnergySystem& s, const VariableIndex& idx, const std::vector<double>& x) {
    const auto v = cost_vectors(s, idx);
    CostBreakdown c;
    c.tec = dot(v.tec, x);
    c.netw = dot(v.netw, x);
    c.imp = dot(v.imp, x);
    c.co2 = dot(v.co2, x);
    c.total = c.tec + c.netw + c.imp + c.co2;
    return c;
}

Objective assemble_objective(const EnergySystem& s, const VariableIndex& idx, const ObjectiveMode& mode) {
    Objective o;
    if (mode.kind == ObjectiveMode::Kind::min_emissions) {
        o.coefficients = emission_coefficients(s, idx).total();
        return o;
    }
    o.coefficients = cost_vectors(s, idx).total();
    if (mode.kind == ObjectiveMode::Kind::min_cost_with_cap) {
        if (!(mode.cap >= 0.0)) throw DomainError("emission cap must be >= 0");
        const auto e = emission_coefficients(s, idx).total();
        LinearRow row{kEmissionCapRow, RowSense::less_equal, mode.cap, {}};
        for (int j = 0; j < idx.size(); ++j)
            if (e[j] != 0.0) row.terms.push_back({j, e[j]});
        o.cap_row = std::move(row);
    }
    return o;
}

}  // namespace carrierflow
