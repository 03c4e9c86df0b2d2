#include "carrierflow/variable_index.hpp"

#include <cmath>

#include "carrierflow/errors.hpp"
#include "carrierflow/sparse_problem.hpp"

namespace carrierflow {

const char* to_string(VarRole r) {
    switch (r) {
        case VarRole::output: return "out";
        case VarRole::input: return "in";
        case VarRole::charge: return "charge";
        case VarRole::discharge: return "discharge";
        case VarRole::state_of_charge: return "soc";
        case VarRole::spill: return "spill";
        case VarRole::size: return "size";
        case VarRole::build: return "build";
        case VarRole::sent: return "sent";
        case VarRole::received: return "received";
        case VarRole::compression: return "cons";
        case VarRole::import_flow: return "import";
    }
    return "?";
}

std::uint64_t VarKey::packed() const {
    // step + 1 fits 32 bits, index 20 bits, the rest a few bits each.
    std::uint64_t k = static_cast<std::uint64_t>(step + 1);
    k |= static_cast<std::uint64_t>(index & 0xFFFFF) << 32;
    k |= static_cast<std::uint64_t>(role) << 52;
    k |= static_cast<std::uint64_t>(carrier) << 57;
    k |= static_cast<std::uint64_t>(direction & 1) << 59;
    k |= static_cast<std::uint64_t>(entity) << 60;
    return k;
}

std::vector<Port> technology_ports(const TechnologyInstance& t) {
    std::vector<Port> ports;
    switch (t.kind) {
        case TechKind::renewable:
        case TechKind::conversion1:
            ports.push_back({VarRole::output, t.output_carrier, FlowDirection::output});
            break;
        case TechKind::conversion2:
            for (Carrier c : t.conversion.inputs) ports.push_back({VarRole::input, c, FlowDirection::input});
            ports.push_back({VarRole::output, t.conversion.output, FlowDirection::output});
            break;
        case TechKind::storage1:
        case TechKind::storage2_1:
        case TechKind::storage2_2:
            ports.push_back({VarRole::charge, t.storage.carrier, FlowDirection::input});
            ports.push_back({VarRole::discharge, t.storage.carrier, FlowDirection::output});
            if (t.kind == TechKind::storage2_2)
                ports.push_back({VarRole::input, Carrier::electricity, FlowDirection::input});
            break;
    }
    return ports;
}

bool is_active(const TechnologyInstance& t) { return t.existing_size > 0.0 || t.expandable; }
bool is_active(const NetworkBranch& b) { return b.existing_capacity > 0.0 || b.expandable; }
bool has_size_variable(const TechnologyInstance& t) { return t.expandable; }
bool has_size_variable(const NetworkBranch& b) { return b.expandable; }

bool has_build_variable(const NetworkBranch& b) {
    return b.expandable && b.integer_block_mw &&
           (b.cost_poly.gamma1 + b.cost_poly.gamma3 * b.length_km) > 0.0;
}

int column_count(const TechnologyInstance& t, int steps) {
    if (!is_active(t)) return 0;
    int per_step = 0;
    switch (t.kind) {
        case TechKind::renewable:
        case TechKind::conversion1: per_step = 1; break;
        case TechKind::conversion2: per_step = static_cast<int>(t.conversion.inputs.size()) + 1; break;
        case TechKind::storage1: per_step = 3; break;
        case TechKind::storage2_1: per_step = 4; break;
        case TechKind::storage2_2: per_step = 4; break;
    }
    return per_step * steps + (has_size_variable(t) ? 1 : 0);
}

int column_count(const NetworkBranch& b, int steps) {
    if (!is_active(b)) return 0;
    const int directions = b.bidirectional ? 2 : 1;
    int per_step = 2 * directions + (b.compression ? 1 : 0);
    int fixed = has_size_variable(b) ? directions : 0;
    fixed += has_build_variable(b) ? 1 : 0;
    return per_step * steps + fixed;
}

int column_count(const Node& n, int steps) {
    int c = 0;
    for (Carrier r : kCarriers) c += n.import_limit[carrier_slot(r)] > 0.0 ? steps : 0;
    return c;
}

int VariableIndex::find(const VarKey& key) const {
    auto it = lookup_.find(key.packed());
    return it == lookup_.end() ? -1 : it->second;
}

int VariableIndex::at(const VarKey& key) const {
    const int c = find(key);
    if (c < 0)
        throw StructuralError(std::string("no variable ") + to_string(key.role) + " for entity " +
                              std::to_string(key.index) + " at step " + std::to_string(key.step));
    return c;
}

int VariableIndex::branch(int b, VarRole role, int direction, int step) const {
    return find({EntityKind::branch, b, role, Carrier::electricity, direction, step});
}

int VariableIndex::branch_size(int b, int direction) const {
    return find({EntityKind::branch, b, VarRole::size, Carrier::electricity, direction, -1});
}

int VariableIndex::branch_build(int b) const {
    return find({EntityKind::branch, b, VarRole::build, Carrier::electricity, 0, -1});
}

int VariableIndex::add(ColumnSpec spec) {
    const int col = size();
    if (!lookup_.emplace(spec.key.packed(), col).second)
        throw StructuralError("duplicate variable '" + spec.name + "'");
    columns_.push_back(std::move(spec));
    return col;
}

namespace {

std::string step_name(const std::string& base, int t) { return base + "[" + std::to_string(t) + "]"; }

}  // namespace

VariableIndex assemble_variable_index(const EnergySystem& s) {
    for (const auto& t : s.technologies)
        if (s.node_index(t.node) < 0) throw StructuralError("technology '" + t.id + "' has unknown node '" + t.node + "'");
    for (const auto& b : s.branches)
        if (s.node_index(b.from_node) < 0 || s.node_index(b.to_node) < 0)
            throw StructuralError("branch '" + b.id + "' has unknown node");
    for (const auto& d : s.demands)
        if (s.node_index(d.node) < 0) throw StructuralError("demand series for unknown node '" + d.node + "'");
    require_valid(s);
    VariableIndex idx;
    const int T = s.horizon.step_count;
    idx.steps_ = T;

    for (int ti = 0; ti < static_cast<int>(s.technologies.size()); ++ti) {
        const auto& t = s.technologies[ti];
        if (!is_active(t)) continue;
        if (s.node_index(t.node) < 0) throw StructuralError("technology '" + t.id + "' has unknown node");
        const std::string base = "tech[" + t.id + "]";
        auto per_step = [&](VarRole role, Carrier c, const std::string& label) {
            for (int k = 0; k < T; ++k)
                idx.add({{EntityKind::technology, ti, role, c, 0, k}, step_name(base + "." + label, k), 0.0, kInf, false});
        };
        switch (t.kind) {
            case TechKind::renewable:
            case TechKind::conversion1:
                per_step(VarRole::output, t.output_carrier, std::string("out.") + to_string(t.output_carrier));
                break;
            case TechKind::conversion2:
                for (Carrier c : t.conversion.inputs) per_step(VarRole::input, c, std::string("in.") + to_string(c));
                per_step(VarRole::output, t.conversion.output, std::string("out.") + to_string(t.conversion.output));
                break;
            case TechKind::storage1:
            case TechKind::storage2_1:
            case TechKind::storage2_2:
                per_step(VarRole::charge, t.storage.carrier, "charge");
                per_step(VarRole::discharge, t.storage.carrier, "discharge");
                per_step(VarRole::state_of_charge, t.storage.carrier, "soc");
                if (t.kind == TechKind::storage2_1) per_step(VarRole::spill, t.storage.carrier, "spill");
                if (t.kind == TechKind::storage2_2) per_step(VarRole::input, Carrier::electricity, "in.electricity");
                break;
        }
        if (has_size_variable(t))
            idx.add({{EntityKind::technology, ti, VarRole::size, Carrier::electricity, 0, -1}, base + ".size", 0.0,
                     t.max_size - t.existing_size, false});
    }

    idx.branch_unit_.assign(s.branches.size(), 1.0);
    for (int bi = 0; bi < static_cast<int>(s.branches.size()); ++bi) {
        const auto& b = s.branches[bi];
        if (!is_active(b)) continue;
        if (s.node_index(b.from_node) < 0 || s.node_index(b.to_node) < 0)
            throw StructuralError("branch '" + b.id + "' has unknown node");
        const std::string base = "branch[" + b.id + "]";
        const int directions = b.bidirectional ? 2 : 1;
        for (int d = 0; d < directions; ++d) {
            const std::string dir = d == kForward ? "fw" : "bw";
            for (int k = 0; k < T; ++k)
                idx.add({{EntityKind::branch, bi, VarRole::sent, Carrier::electricity, d, k},
                         step_name(base + ".sent." + dir, k), 0.0, kInf, false});
            for (int k = 0; k < T; ++k)
                idx.add({{EntityKind::branch, bi, VarRole::received, Carrier::electricity, d, k},
                         step_name(base + ".received." + dir, k), 0.0, kInf, false});
        }
        if (b.compression)
            for (int k = 0; k < T; ++k)
                idx.add({{EntityKind::branch, bi, VarRole::compression, Carrier::electricity, 0, k},
                         step_name(base + ".cons", k), 0.0, kInf, false});
        if (has_size_variable(b)) {
            const double room = b.max_capacity - b.existing_capacity;
            double ub = room;
            bool integer = false;
            if (b.integer_block_mw) {
                idx.branch_unit_[bi] = *b.integer_block_mw;
                ub = std::floor(room / *b.integer_block_mw + 1e-9);
                integer = true;
            }
            for (int d = 0; d < directions; ++d)
                idx.add({{EntityKind::branch, bi, VarRole::size, Carrier::electricity, d, -1},
                         base + ".size" + (directions == 2 ? (d == kForward ? ".fw" : ".bw") : ""), 0.0, ub, integer});
            if (has_build_variable(b))
                idx.add({{EntityKind::branch, bi, VarRole::build, Carrier::electricity, 0, -1}, base + ".build", 0.0,
                         1.0, true});
        }
    }

    for (int ni = 0; ni < static_cast<int>(s.nodes.size()); ++ni) {
        const auto& n = s.nodes[ni];
        for (Carrier c : kCarriers) {
            const double lim = n.import_limit[carrier_slot(c)];
            if (!(lim > 0.0)) continue;
            const double ub = std::isinf(lim) ? kInf : lim * s.horizon.hours_per_step;
            for (int k = 0; k < T; ++k)
                idx.add({{EntityKind::node, ni, VarRole::import_flow, c, 0, k},
                         step_name("node[" + n.id + "].import." + to_string(c), k), 0.0, ub, false});
        }
    }
    return idx;
}

VariableIndex assemble_variable_index(const EnergySystem& system, const ScenarioSpec& scenario) {
    return assemble_variable_index(apply_scenario(system, scenario));
}

}  // namespace carrierflow
