#pragma once

#include "carrierflow/constraint_block.hpp"
#include "carrierflow/system.hpp"
#include "carrierflow/variable_index.hpp"

namespace carrierflow {

/// Per step and direction: F_sent <= S and F_received = (1 - mu d) F_sent.
/// Also links a build binary to the block count when the branch has one.
/// Throws DataError when mu d >= 1.
ConstraintBlock emit_branch_capacity_and_loss(const EnergySystem& system, int branch, const VariableIndex& index);

/// Equal sizes in both directions and F_fw + F_bw <= S per step.
/// Throws StructuralError for unidirectional branches.
ConstraintBlock emit_bidirectional_coupling(const EnergySystem& system, int branch, const VariableIndex& index);

/// Specific compression electricity, MWh el per MWh hydrogen. Throws
/// DomainError when the outlet pressure is below the reference pressure.
double pipeline_compression_factor(const CompressionParams& params);

/// F_cons,t = k F_sent,t; the consumption is drawn at the sending node.
/// Throws StructuralError when the branch does not carry hydrogen.
ConstraintBlock emit_pipeline_consumption(const EnergySystem& system, int branch, const VariableIndex& index);

/// One equality per node, carrier and step:
///   demand = sum tech (out - in) + received - sent - cons + import.
/// Rows are skipped only where no column takes part and demand is zero.
ConstraintBlock emit_energy_balance(const EnergySystem& system, const VariableIndex& index);

/// Row name of a balance, for lookups after a solve.
std::string balance_row_name(const Node& node, Carrier carrier, int step);

/// All rows of one branch.
ConstraintBlock emit_branch(const EnergySystem& system, int branch, const VariableIndex& index);

}  // namespace carrierflow
