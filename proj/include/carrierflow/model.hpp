#pragma once

#include "carrierflow/costing.hpp"
#include "carrierflow/kernels.hpp"
#include "carrierflow/scenario_spec.hpp"
#include "carrierflow/sparse_problem.hpp"
#include "carrierflow/system.hpp"
#include "carrierflow/variable_index.hpp"

namespace carrierflow {

/// A gated system together with its column registry and assembled problem.
struct Model {
    EnergySystem system;
    VariableIndex index;
    SparseProblem problem;
    ObjectiveMode mode;
    int cap_row = -1;  // row of the emission cap, -1 without one
};

/// Rows are laid out technology blocks first, then branches, then nodal
/// balances, then the cap row. Entity blocks are emitted concurrently and
/// merged in entity order, so the problem does not depend on the thread count.
Model build_model(const EnergySystem& gated, const ObjectiveMode& mode,
                  kernels::Execution execution = kernels::Execution::parallel);
Model build_model(const EnergySystem& system, const ScenarioSpec& scenario, const ObjectiveMode& mode,
                  kernels::Execution execution = kernels::Execution::parallel);

/// Every technology, branch and balance row of the gated system.
ConstraintBlock emit_all_constraints(const EnergySystem& gated, const VariableIndex& index,
                                     kernels::Execution execution = kernels::Execution::parallel);

}  // namespace carrierflow
