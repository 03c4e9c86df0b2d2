#include "carrierflow/network_constraints.hpp"

#include <cmath>

#include "carrierflow/errors.hpp"

namespace carrierflow {

namespace {

const NetworkBranch& branch_at(const EnergySystem& s, int bi) {
    if (bi < 0 || bi >= static_cast<int>(s.branches.size()))
        throw StructuralError("branch index " + std::to_string(bi) + " out of range");
    return s.branches[bi];
}

std::string row_name(const NetworkBranch& b, const std::string& what, int step) {
    return "branch[" + b.id + "]." + what + "[" + std::to_string(step) + "]";
}

}  // namespace

ConstraintBlock emit_branch_capacity_and_loss(const EnergySystem& s, int bi, const VariableIndex& idx) {
    const auto& b = branch_at(s, bi);
    const double md = b.loss_factor_per_km * b.length_km;
    if (!(md < 1.0)) throw DataError("branch '" + b.id + "' loses all flow (mu * d >= 1)");
    ConstraintBlock out;
    if (!is_active(b)) return out;
    const int directions = b.bidirectional ? 2 : 1;
    const double unit = idx.branch_size_unit(bi);
    for (int d = 0; d < directions; ++d) {
        const std::string dir = d == kForward ? "fw" : "bw";
        const int size = idx.branch_size(bi, d);
        for (int k = 0; k < s.horizon.step_count; ++k) {
            const int sent = idx.branch(bi, VarRole::sent, d, k);
            const int recv = idx.branch(bi, VarRole::received, d, k);
            const double h = s.horizon.hours_per_step;
            if (size < 0) {
                out.tighten(sent, b.existing_capacity * h);
            } else {
                out.add_row(row_name(b, "capacity." + dir, k), RowSense::less_equal, b.existing_capacity * h,
                            {{sent, 1.0}, {size, -unit * h}});
            }
            out.add_row(row_name(b, "loss." + dir, k), RowSense::equal, 0.0, {{recv, 1.0}, {sent, -(1.0 - md)}});
        }
    }
    const int build = idx.branch_build(bi);
    if (build >= 0) {
        const int size = idx.branch_size(bi, kForward);
        const double max_blocks = idx.column(size).upper;
        out.add_row("branch[" + b.id + "].build", RowSense::less_equal, 0.0, {{size, 1.0}, {build, -max_blocks}});
    }
    return out;
}

ConstraintBlock emit_bidirectional_coupling(const EnergySystem& s, int bi, const VariableIndex& idx) {
    const auto& b = branch_at(s, bi);
    if (!b.bidirectional) throw StructuralError("bidirectional coupling applied to unidirectional branch '" + b.id + "'");
    ConstraintBlock out;
    if (!is_active(b)) return out;
    const int fw = idx.branch_size(bi, kForward);
    const int bw = idx.branch_size(bi, kBackward);
    if (fw >= 0) out.add_row("branch[" + b.id + "].symmetric_size", RowSense::equal, 0.0, {{fw, 1.0}, {bw, -1.0}});
    const double h = s.horizon.hours_per_step;
    const double unit = idx.branch_size_unit(bi);
    for (int k = 0; k < s.horizon.step_count; ++k) {
        std::vector<Term> t{{idx.branch(bi, VarRole::sent, kForward, k), 1.0},
                            {idx.branch(bi, VarRole::sent, kBackward, k), 1.0}};
        if (fw >= 0) t.push_back({fw, -unit * h});
        out.add_row(row_name(b, "cut", k), RowSense::less_equal, b.existing_capacity * h, std::move(t));
    }
    return out;
}

double pipeline_compression_factor(const CompressionParams& p) {
    if (p.outlet_pressure_bar < p.reference_pressure_bar)
        throw DomainError("outlet pressure below reference pressure");
    if (!(p.heat_capacity_ratio > 1.0) || !(p.efficiency > 0.0) || !(p.lower_heating_value > 0.0))
        throw DomainError("compression parameters outside their domain");
    const double g = p.heat_capacity_ratio;
    const double lift = std::pow(p.outlet_pressure_bar / p.reference_pressure_bar, (g - 1.0) / g) - 1.0;
    return p.specific_heat * p.temperature_k / (p.efficiency * p.lower_heating_value) * lift;
}

ConstraintBlock emit_pipeline_consumption(const EnergySystem& s, int bi, const VariableIndex& idx) {
    const auto& b = branch_at(s, bi);
    if (b.carrier != Carrier::hydrogen) throw StructuralError("pipeline consumption applied to non-hydrogen branch '" + b.id + "'");
    ConstraintBlock out;
    if (!is_active(b) || !b.compression) return out;
    const double k = pipeline_compression_factor(*b.compression);
    for (int t = 0; t < s.horizon.step_count; ++t)
        out.add_row(row_name(b, "compression", t), RowSense::equal, 0.0,
                    {{idx.branch(bi, VarRole::compression, kForward, t), 1.0},
                     {idx.branch(bi, VarRole::sent, kForward, t), -k}});
    return out;
}

std::string balance_row_name(const Node& n, Carrier c, int step) {
    return "node[" + n.id + "].balance." + to_string(c) + "[" + std::to_string(step) + "]";
}

ConstraintBlock emit_energy_balance(const EnergySystem& s, const VariableIndex& idx) {
    const int T = s.horizon.step_count;
    const int N = static_cast<int>(s.nodes.size());
    // per_step[node][carrier][step]
    std::vector<std::vector<std::vector<std::vector<Term>>>> per_step(
        N, std::vector<std::vector<std::vector<Term>>>(kCarrierCount, std::vector<std::vector<Term>>(T)));

    for (int ti = 0; ti < static_cast<int>(s.technologies.size()); ++ti) {
        const auto& t = s.technologies[ti];
        if (!is_active(t)) continue;
        const int n = s.node_index(t.node);
        for (const Port& p : technology_ports(t)) {
            const double sign = p.direction == FlowDirection::output ? 1.0 : -1.0;
            for (int k = 0; k < T; ++k)
                per_step[n][carrier_slot(p.carrier)][k].push_back({idx.tech(ti, p.role, p.carrier, k), sign});
        }
    }
    for (int bi = 0; bi < static_cast<int>(s.branches.size()); ++bi) {
        const auto& b = s.branches[bi];
        if (!is_active(b)) continue;
        const int from = s.node_index(b.from_node);
        const int to = s.node_index(b.to_node);
        const int r = carrier_slot(b.carrier);
        const int directions = b.bidirectional ? 2 : 1;
        for (int d = 0; d < directions; ++d) {
            const int sender = d == kForward ? from : to;
            const int receiver = d == kForward ? to : from;
            for (int k = 0; k < T; ++k) {
                per_step[sender][r][k].push_back({idx.branch(bi, VarRole::sent, d, k), -1.0});
                per_step[receiver][r][k].push_back({idx.branch(bi, VarRole::received, d, k), 1.0});
            }
        }
        if (b.compression)
            for (int k = 0; k < T; ++k)
                per_step[from][carrier_slot(Carrier::electricity)][k].push_back(
                    {idx.branch(bi, VarRole::compression, kForward, k), -1.0});
    }
    for (int n = 0; n < N; ++n)
        for (Carrier c : kCarriers)
            for (int k = 0; k < T; ++k) {
                const int col = idx.import_flow(n, c, k);
                if (col >= 0) per_step[n][carrier_slot(c)][k].push_back({col, 1.0});
            }

    ConstraintBlock out;
    for (int n = 0; n < N; ++n)
        for (Carrier c : kCarriers) {
            const auto demand = s.demand(s.nodes[n].id, c);
            for (int k = 0; k < T; ++k) {
                auto& t = per_step[n][carrier_slot(c)][k];
                if (t.empty() && demand[k] == 0.0) continue;
                out.add_row(balance_row_name(s.nodes[n], c, k), RowSense::equal, demand[k], std::move(t));
            }
        }
    return out;
}

ConstraintBlock emit_branch(const EnergySystem& s, int bi, const VariableIndex& idx) {
    ConstraintBlock out = emit_branch_capacity_and_loss(s, bi, idx);
    const auto& b = s.branches[bi];
    if (b.bidirectional) out.append(emit_bidirectional_coupling(s, bi, idx));
    if (b.carrier == Carrier::hydrogen) out.append(emit_pipeline_consumption(s, bi, idx));
    return out;
}

}  // namespace carrierflow
