#pragma once

#include <vector>

#include "carrierflow/simplex.hpp"

namespace carrierflow {

struct VerificationReport {
    double max_row_violation = 0.0;          // relative to max(1, |b|, sum |a x|)
    double max_row_violation_abs = 0.0;
    double max_bound_violation = 0.0;        // relative to max(1, |bound|)
    double max_integrality_violation = 0.0;
    double objective_recomputed = 0.0;
    double objective_error = 0.0;            // relative to max(1, |objective|)
    bool duals_checked = false;
    double max_dual_infeasibility = 0.0;     // relative to max(1, max |c|)
    double max_complementarity = 0.0;        // relative to max(1, |objective|)
    std::vector<int> violated_rows;          // rows above the tolerance
    std::vector<int> violated_columns;       // bound or integrality violations

    bool ok(double tol = 1e-7) const {
        return max_row_violation <= tol && max_bound_violation <= tol && max_integrality_violation <= 1e-6 &&
               objective_error <= tol && (!duals_checked || (max_dual_infeasibility <= tol && max_complementarity <= tol));
    }
};

/// Recompute activities, bounds, integrality and the objective from the raw
/// primal values; for LP results also dual feasibility (c - A'y) and
/// complementary slackness.
VerificationReport verify_solution(const SparseProblem& problem, const SolveResult& result,
                                   double tol = 1e-7,
                                   kernels::Execution execution = kernels::Execution::parallel);

}  // namespace carrierflow
