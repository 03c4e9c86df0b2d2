#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "carrierflow/scenario_spec.hpp"
#include "carrierflow/system.hpp"

namespace carrierflow {

enum class EntityKind : std::uint8_t { technology, branch, node };

enum class VarRole : std::uint8_t {
    output,           // technology output of a carrier
    input,            // technology input of a carrier (incl. compression electricity of storage2_2)
    charge,
    discharge,
    state_of_charge,
    spill,
    size,             // expansion delta; block count for integer-block branches
    build,            // binary gate for fixed branch costs
    sent,             // branch flow leaving the sending node
    received,         // branch flow arriving at the receiving node
    compression,      // pipeline electricity use at the sender
    import_flow,
};
const char* to_string(VarRole r);

/// Direction of a branch variable: forward runs from_node -> to_node.
inline constexpr int kForward = 0;
inline constexpr int kBackward = 1;

struct VarKey {
    EntityKind entity = EntityKind::technology;
    int index = 0;                 // into the system's technologies / branches / nodes
    VarRole role = VarRole::output;
    Carrier carrier = Carrier::electricity;
    int direction = 0;
    int step = -1;                 // -1 for per-entity variables

    std::uint64_t packed() const;
    bool operator==(const VarKey&) const = default;
};

struct ColumnSpec {
    VarKey key;
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
    bool integer = false;
};

/// A technology's energy flow at a node, per carrier.
struct Port {
    VarRole role;
    Carrier carrier;
    FlowDirection direction;
};
std::vector<Port> technology_ports(const TechnologyInstance& tech);

/// Per-entity active flag: an entity without existing size that may not be
/// expanded takes no part in the model.
bool is_active(const TechnologyInstance& tech);
bool is_active(const NetworkBranch& branch);
/// Expansion column created for the entity.
bool has_size_variable(const TechnologyInstance& tech);
bool has_size_variable(const NetworkBranch& branch);
/// Binary build gate created for the branch (integer blocks with fixed costs).
bool has_build_variable(const NetworkBranch& branch);
/// Number of columns the entity contributes over `steps` steps.
int column_count(const TechnologyInstance& tech, int steps);
int column_count(const NetworkBranch& branch, int steps);
int column_count(const Node& node, int steps);

/// Deterministic, gap-free registry of model columns.
class VariableIndex {
public:
    int size() const { return static_cast<int>(columns_.size()); }
    int steps() const { return steps_; }
    const ColumnSpec& column(int col) const { return columns_.at(col); }
    const std::vector<ColumnSpec>& columns() const { return columns_; }

    /// -1 when absent.
    int find(const VarKey& key) const;
    /// StructuralError when absent.
    int at(const VarKey& key) const;

    int tech(int t, VarRole role, Carrier c, int step) const { return find({EntityKind::technology, t, role, c, 0, step}); }
    int tech_size(int t) const { return find({EntityKind::technology, t, VarRole::size, Carrier::electricity, 0, -1}); }
    int branch(int b, VarRole role, int direction, int step) const;
    int branch_size(int b, int direction = kForward) const;
    int branch_build(int b) const;
    int import_flow(int node, Carrier c, int step) const {
        return find({EntityKind::node, node, VarRole::import_flow, c, 0, step});
    }

    /// Megawatts represented by one unit of the branch size column.
    double branch_size_unit(int b) const { return branch_unit_.at(b); }

    int add(ColumnSpec spec);

private:
    friend VariableIndex assemble_variable_index(const EnergySystem& system);
    int steps_ = 0;
    std::vector<ColumnSpec> columns_;
    std::unordered_map<std::uint64_t, int> lookup_;
    std::vector<double> branch_unit_;
};

/// Registry for an already gated system. Throws StructuralError on dangling
/// references and DataError when the system is invalid.
VariableIndex assemble_variable_index(const EnergySystem& system);
/// Applies the scenario gates first.
VariableIndex assemble_variable_index(const EnergySystem& system, const ScenarioSpec& scenario);

}  // namespace carrierflow
