#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carrierflow/kernels.hpp"
#include "carrierflow/sparse_problem.hpp"

namespace carrierflow {

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(SolveStatus s);

enum class BasisStatus : std::uint8_t { basic, at_lower, at_upper, free_zero };

/// Simplex basis over columns followed by one slack per row.
struct Basis {
    std::vector<BasisStatus> columns;
    std::vector<BasisStatus> rows;
    bool empty() const { return columns.empty() && rows.empty(); }
};

/// Centralized tolerances and limits.
struct SolveOptions {
    double feasibility_tol = 1e-9;   // in the scaled problem
    double optimality_tol = 1e-9;
    double pivot_tol = 1e-9;
    double integrality_tol = 1e-6;
    double mip_gap = 1e-6;           // absolute
    int max_iterations = 0;          // 0: automatic, grows with problem size
    int node_limit = 20000;
    int refactor_interval = 64;
    int degenerate_before_bland = 60;
    bool scaling = true;
    kernels::Execution execution = kernels::Execution::parallel;
    std::optional<Basis> start_basis;
    /// Known feasible objective value for branch-and-bound pruning.
    std::optional<double> incumbent_objective;
    std::optional<std::vector<double>> incumbent_values;
};

struct SolveResult {
    SolveStatus status = SolveStatus::iteration_limit;
    double objective = 0.0;
    std::vector<double> primal;          // per column
    std::vector<double> duals;           // per row (LP relaxation of the final model)
    std::vector<double> reduced_costs;   // per column
    Basis basis;
    double best_bound = 0.0;             // MILP lower bound
    double mip_gap = 0.0;                // incumbent - best bound
    long iterations = 0;
    long nodes = 0;
    std::string message;

    bool optimal() const { return status == SolveStatus::optimal; }
};

/// Bounded-variable primal simplex (composite phase 1, Dantzig pricing with a
/// Bland fallback under degeneracy, Harris ratio test, LU basis with product-
/// form updates). Integrality marks are ignored.
SolveResult solve_lp(const SparseProblem& problem, const SolveOptions& options = {});

}  // namespace carrierflow
