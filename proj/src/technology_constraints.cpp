#include "carrierflow/technology_constraints.hpp"

#include <cmath>

#include "carrierflow/errors.hpp"

namespace carrierflow {

void ConstraintBlock::append(ConstraintBlock&& other) {
    rows.insert(rows.end(), std::make_move_iterator(other.rows.begin()), std::make_move_iterator(other.rows.end()));
    bounds.insert(bounds.end(), other.bounds.begin(), other.bounds.end());
}

const LinearRow* ConstraintBlock::find_row(const std::string& name) const {
    for (const auto& r : rows)
        if (r.name == name) return &r;
    return nullptr;
}

double storage_retention(double self_discharge_per_hour, double hours_per_step) {
    return std::pow(1.0 - self_discharge_per_hour, hours_per_step);
}

namespace {

const TechnologyInstance& checked(const EnergySystem& s, int tech, std::initializer_list<TechKind> kinds,
                                  const char* what) {
    if (tech < 0 || tech >= static_cast<int>(s.technologies.size()))
        throw StructuralError("technology index " + std::to_string(tech) + " out of range");
    const auto& t = s.technologies[tech];
    for (TechKind k : kinds)
        if (t.kind == k) return t;
    throw StructuralError(std::string(what) + " applied to technology '" + t.id + "' of kind " + to_string(t.kind));
}

std::string row_name(const TechnologyInstance& t, const char* what, int step) {
    return "tech[" + t.id + "]." + what + "[" + std::to_string(step) + "]";
}

/// value_t <= coef * (existing + delta): a bound when there is no size column.
void size_limit(ConstraintBlock& out, const TechnologyInstance& t, const char* what, int step, int col,
                double coef, int size_col) {
    if (size_col < 0) {
        out.tighten(col, coef * t.existing_size);
    } else {
        out.add_row(row_name(t, what, step), RowSense::less_equal, coef * t.existing_size,
                    {{col, 1.0}, {size_col, -coef}});
    }
}

void storage_common(ConstraintBlock& out, const EnergySystem& s, int ti, const VariableIndex& idx,
                    const std::vector<double>* inflow) {
    const auto& t = s.technologies[ti];
    const auto& p = t.storage;
    const double h = s.horizon.hours_per_step;
    const int T = s.horizon.step_count;
    const double keep = storage_retention(p.self_discharge, h);
    const int size = idx.tech_size(ti);
    const Carrier c = p.carrier;
    const double cin = p.max_charge_rate * h;
    const double cout = p.max_discharge_rate * h;
    for (int k = 0; k < T; ++k) {
        const int xin = idx.tech(ti, VarRole::charge, c, k);
        const int xout = idx.tech(ti, VarRole::discharge, c, k);
        const int soc = idx.tech(ti, VarRole::state_of_charge, c, k);
        const int prev = idx.tech(ti, VarRole::state_of_charge, c, (k + T - 1) % T);
        size_limit(out, t, "max_charge", k, xin, cin, size);
        size_limit(out, t, "max_discharge", k, xout, cout, size);
        size_limit(out, t, "level", k, soc, 1.0, size);
        std::vector<Term> bal{{soc, 1.0}, {prev, -keep}, {xin, -p.charge_efficiency}, {xout, 1.0 / p.discharge_efficiency}};
        double rhs = 0.0;
        if (inflow) {
            bal.push_back({idx.tech(ti, VarRole::spill, c, k), 1.0});
            rhs = (*inflow)[k];
        }
        out.add_row(row_name(t, "soc_balance", k), RowSense::equal, rhs, std::move(bal));
        std::vector<Term> cut{{xin, 1.0 / cin}, {xout, 1.0 / cout}};
        if (size >= 0) cut.push_back({size, -1.0});
        out.add_row(row_name(t, "cut", k), RowSense::less_equal, t.existing_size, std::move(cut));
    }
}

}  // namespace

ConstraintBlock emit_renewable(const EnergySystem& s, int ti, const VariableIndex& idx) {
    const auto& t = checked(s, ti, {TechKind::renewable}, "emit_renewable");
    auto it = s.renewable_profiles.find(t.id);
    if (it == s.renewable_profiles.end() || it->second.empty())
        throw DataError("technology '" + t.id + "' has no renewable profile");
    const auto& profile = it->second;
    if (static_cast<int>(profile.size()) < s.horizon.step_count)
        throw DataError("renewable profile of '" + t.id + "' is shorter than the horizon");
    ConstraintBlock out;
    if (!is_active(t)) return out;
    const int size = idx.tech_size(ti);
    for (int k = 0; k < s.horizon.step_count; ++k) {
        const int x = idx.tech(ti, VarRole::output, t.output_carrier, k);
        if (size < 0) {
            out.tighten(x, profile[k]);
        } else {
            // existing_size > 0 is guaranteed by validation for expandable renewables.
            out.add_row(row_name(t, "available", k), RowSense::less_equal, profile[k],
                        {{x, 1.0}, {size, -profile[k] / t.existing_size}});
        }
    }
    return out;
}

ConstraintBlock emit_conversion1(const EnergySystem& s, int ti, const VariableIndex& idx) {
    const auto& t = checked(s, ti, {TechKind::conversion1}, "emit_conversion1");
    ConstraintBlock out;
    if (!is_active(t)) return out;
    const int size = idx.tech_size(ti);
    for (int k = 0; k < s.horizon.step_count; ++k)
        size_limit(out, t, "capacity", k, idx.tech(ti, VarRole::output, t.output_carrier, k), s.horizon.hours_per_step,
                   size);
    return out;
}

ConstraintBlock emit_conversion2(const EnergySystem& s, int ti, const VariableIndex& idx) {
    const auto& t = checked(s, ti, {TechKind::conversion2}, "emit_conversion2");
    const auto& p = t.conversion;
    for (Carrier c : p.inputs)
        if (c == p.output) throw DataError("technology '" + t.id + "' lists its output carrier among its inputs");
    ConstraintBlock out;
    if (!is_active(t)) return out;
    const int size = idx.tech_size(ti);
    for (int k = 0; k < s.horizon.step_count; ++k) {
        const int xout = idx.tech(ti, VarRole::output, p.output, k);
        size_limit(out, t, "capacity", k, xout, s.horizon.hours_per_step, size);
        std::vector<Term> link{{xout, 1.0}};
        for (Carrier c : p.inputs) link.push_back({idx.tech(ti, VarRole::input, c, k), -p.efficiency});
        out.add_row(row_name(t, "conversion", k), RowSense::equal, 0.0, std::move(link));
        for (const auto& [r, kappa] : p.admix_limits) {
            std::vector<Term> lim;
            for (Carrier c : p.inputs) {
                const double a = (c == r ? 1.0 : 0.0) - kappa;
                if (a != 0.0) lim.push_back({idx.tech(ti, VarRole::input, c, k), a});
            }
            out.add_row(row_name(t, (std::string("admix.") + to_string(r)).c_str(), k), RowSense::less_equal, 0.0,
                        std::move(lim));
        }
    }
    return out;
}

ConstraintBlock emit_storage1(const EnergySystem& s, int ti, const VariableIndex& idx) {
    const auto& t = checked(s, ti, {TechKind::storage1}, "emit_storage1");
    ConstraintBlock out;
    if (!is_active(t)) return out;
    storage_common(out, s, ti, idx, nullptr);
    return out;
}

ConstraintBlock emit_storage_open_loop(const EnergySystem& s, int ti, const VariableIndex& idx) {
    const auto& t = checked(s, ti, {TechKind::storage2_1}, "emit_storage_open_loop");
    auto it = s.hydro_inflows.find(t.id);
    if (it == s.hydro_inflows.end() || static_cast<int>(it->second.size()) < s.horizon.step_count)
        throw DataError("technology '" + t.id + "' has no inflow series covering the horizon");
    ConstraintBlock out;
    if (!is_active(t)) return out;
    storage_common(out, s, ti, idx, &it->second);
    return out;
}

ConstraintBlock emit_storage_compressed(const EnergySystem& s, int ti, const VariableIndex& idx) {
    const auto& t = checked(s, ti, {TechKind::storage2_2}, "emit_storage_compressed");
    ConstraintBlock out;
    if (!is_active(t)) return out;
    storage_common(out, s, ti, idx, nullptr);
    for (int k = 0; k < s.horizon.step_count; ++k)
        out.add_row(row_name(t, "compression", k), RowSense::equal, 0.0,
                    {{idx.tech(ti, VarRole::input, Carrier::electricity, k), 1.0},
                     {idx.tech(ti, VarRole::charge, t.storage.carrier, k), -t.storage.compression_electricity}});
    return out;
}

ConstraintBlock emit_technology(const EnergySystem& s, int ti, const VariableIndex& idx) {
    switch (s.technologies.at(ti).kind) {
        case TechKind::renewable: return emit_renewable(s, ti, idx);
        case TechKind::conversion1: return emit_conversion1(s, ti, idx);
        case TechKind::conversion2: return emit_conversion2(s, ti, idx);
        case TechKind::storage1: return emit_storage1(s, ti, idx);
        case TechKind::storage2_1: return emit_storage_open_loop(s, ti, idx);
        case TechKind::storage2_2: return emit_storage_compressed(s, ti, idx);
    }
    return {};
}

}  // namespace carrierflow
