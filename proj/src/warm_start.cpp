#include "carrierflow/warm_start.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "carrierflow/errors.hpp"
#include "carrierflow/verify.hpp"

namespace carrierflow {

namespace {

void fix_column(SparseProblem& p, int col, double value) {
    if (p.integer[col]) value = std::round(value);
    value = std::clamp(value, p.lower[col], p.upper[col]);
    p.lower[col] = p.upper[col] = value;
}

SolveOptions chained(const SolveOptions& base, const SolveResult& previous) {
    SolveOptions o = base;
    if (!previous.basis.empty()) o.start_basis = previous.basis;
    if (previous.optimal()) {
        o.incumbent_objective = previous.objective;
        o.incumbent_values = previous.primal;
    }
    return o;
}

}  // namespace

WarmStartResult warm_start_solve(const SparseProblem& problem, const WarmStartBase& base,
                                 const FixSchedule& schedule, const SolveOptions& options) {
    if (static_cast<int>(base.values.size()) != problem.num_cols)
        throw StructuralError("warm start base does not match the problem's columns");
    for (int c : schedule.prior_columns)
        if (std::isnan(base.values.at(c)))
            throw StructuralError("warm start base has no value for prior column '" + problem.col_names[c] + "'");

    WarmStartResult out;

    SparseProblem stage1 = problem;
    for (int c : schedule.prior_columns) fix_column(stage1, c, base.values[c]);
    for (int c : schedule.new_columns) fix_column(stage1, c, 0.0);
    SolveOptions o1 = options;
    if (base.basis) o1.start_basis = base.basis;
    out.stages[0] = solve(stage1, o1);
    if (!out.stages[0].optimal()) {
        SolveResult endpoint = out.stages[0];
        if (endpoint.primal.empty()) endpoint = solve_lp(stage1, o1);
        std::vector<std::string> names;
        if (!endpoint.primal.empty()) {
            const auto rep = verify_solution(stage1, endpoint, 1e-7);
            for (int r : rep.violated_rows) names.push_back(stage1.row_names[r]);
            for (int c : rep.violated_columns) names.push_back(stage1.col_names[c]);
        }
        std::string what = "warm start stage 1 is " + std::string(to_string(out.stages[0].status));
        if (!names.empty()) {
            what += "; violated:";
            for (std::size_t k = 0; k < names.size() && k < 20; ++k) what += " " + names[k];
        }
        throw WarmStartError(what, names);
    }

    SparseProblem stage2 = problem;
    for (int c : schedule.prior_columns) fix_column(stage2, c, base.values[c]);
    out.stages[1] = solve(stage2, chained(options, out.stages[0]));
    const SolveResult& previous = out.stages[1].optimal() ? out.stages[1] : out.stages[0];
    out.stages[2] = solve(problem, chained(options, previous));
    return out;
}

}  // namespace carrierflow
