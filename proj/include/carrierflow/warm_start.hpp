#pragma once

#include <array>
#include <optional>
#include <vector>

#include "carrierflow/branch_and_bound.hpp"

namespace carrierflow {

/// Starting information carried over from a related solve.
struct WarmStartBase {
    std::vector<double> values;      // per column of the target problem
    std::optional<Basis> basis;
};

/// Which columns the staged protocol fixes.
struct FixSchedule {
    std::vector<int> prior_columns;  // sizes taken from the base solution
    std::vector<int> new_columns;    // sizes the base solution did not have
};

struct WarmStartResult {
    std::array<SolveResult, 3> stages;
    const SolveResult& final_result() const { return stages[2]; }
};

/// Three stages, each starting from the previous basis and incumbent:
///   1. prior columns fixed at their base values, new columns fixed at zero;
///   2. new columns released, prior columns still fixed;
///   3. everything released.
/// Throws WarmStartError naming the violated rows when stage 1 is infeasible.
WarmStartResult warm_start_solve(const SparseProblem& problem, const WarmStartBase& base,
                                 const FixSchedule& schedule, const SolveOptions& options = {});

}  // namespace carrierflow
