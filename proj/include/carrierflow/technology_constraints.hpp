#pragma once

#include "carrierflow/constraint_block.hpp"
#include "carrierflow/system.hpp"
#include "carrierflow/variable_index.hpp"

namespace carrierflow {

// Each emitter takes the technology by its position in system.technologies
// and throws StructuralError when the kind does not match. Fixed-size limits
// become column bounds; limits involving a size variable become rows.

/// X_out,t <= profile_t * S / existing. Throws DataError when the profile is missing or empty.
ConstraintBlock emit_renewable(const EnergySystem& system, int tech, const VariableIndex& index);

/// X_out,t <= S.
ConstraintBlock emit_conversion1(const EnergySystem& system, int tech, const VariableIndex& index);

/// X_out,t <= S;  X_out,t = alpha * sum X_in,t;  X_in,r,t <= kappa_r * sum X_in,t.
ConstraintBlock emit_conversion2(const EnergySystem& system, int tech, const VariableIndex& index);

/// Rate and level limits, state-of-charge balance with cyclic boundary, and the
/// simultaneity cut X_in / x_in + X_out / x_out <= S.
ConstraintBlock emit_storage1(const EnergySystem& system, int tech, const VariableIndex& index);

/// storage1 plus exogenous inflow and a spill outlet in the balance.
ConstraintBlock emit_storage_open_loop(const EnergySystem& system, int tech, const VariableIndex& index);

/// storage1 plus X_in,el,t = gamma * X_in,t for compression.
ConstraintBlock emit_storage_compressed(const EnergySystem& system, int tech, const VariableIndex& index);

/// Dispatch on the technology kind. Inactive technologies emit nothing.
ConstraintBlock emit_technology(const EnergySystem& system, int tech, const VariableIndex& index);

/// Per-step retention of stored energy, (1 - lambda)^hours.
double storage_retention(double self_discharge_per_hour, double hours_per_step);

}  // namespace carrierflow
