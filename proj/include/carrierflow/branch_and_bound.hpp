#pragma once

#include "carrierflow/simplex.hpp"

namespace carrierflow {

/// Best-bound branch-and-bound over the integer-marked columns, branching on
/// the most fractional value (lowest index on ties). Node order depends only
/// on the input, so repeated solves are identical. Without integer columns
/// this is solve_lp. The reported duals come from the LP with all integer
/// columns fixed at the incumbent.
SolveResult solve_milp(const SparseProblem& problem, const SolveOptions& options = {});

/// Dispatches on whether the problem has integer columns.
SolveResult solve(const SparseProblem& problem, const SolveOptions& options = {});

}  // namespace carrierflow
