#include "carrierflow/model.hpp"

#include <algorithm>
#include <exception>

#include "carrierflow/network_constraints.hpp"
#include "carrierflow/technology_constraints.hpp"

namespace carrierflow {

namespace {

/// Runs fn(i) for i in [0, n) and rethrows the first failure by index.
template <class Fn>
std::vector<ConstraintBlock> emit_each(int n, kernels::Execution e, Fn fn) {
    std::vector<ConstraintBlock> blocks(n);
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) if (e == kernels::Execution::parallel)
    for (int i = 0; i < n; ++i) {
        try {
            blocks[i] = fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    return blocks;
}

}  // namespace

ConstraintBlock emit_all_constraints(const EnergySystem& s, const VariableIndex& idx, kernels::Execution e) {
    ConstraintBlock all;
    auto techs = emit_each(static_cast<int>(s.technologies.size()), e,
                           [&](int t) { return emit_technology(s, t, idx); });
    auto branches = emit_each(static_cast<int>(s.branches.size()), e,
                              [&](int b) { return emit_branch(s, b, idx); });
    for (auto& b : techs) all.append(std::move(b));
    for (auto& b : branches) all.append(std::move(b));
    all.append(emit_energy_balance(s, idx));
    return all;
}

Model build_model(const EnergySystem& gated, const ObjectiveMode& mode, kernels::Execution e) {
    Model m{gated, assemble_variable_index(gated), {}, mode, -1};
    const auto objective = assemble_objective(m.system, m.index, mode);
    ConstraintBlock block = emit_all_constraints(m.system, m.index, e);

    ProblemBuilder pb;
    for (int j = 0; j < m.index.size(); ++j) {
        const auto& c = m.index.column(j);
        pb.add_column(c.name, c.lower, c.upper, objective.coefficients[j], c.integer);
    }
    for (const auto& t : block.bounds) pb.set_bounds(t.column, pb.lower(t.column), std::min(pb.upper(t.column), t.upper));
    for (const auto& r : block.rows) pb.add_row(r.name, r.sense, r.rhs, std::span<const Term>(r.terms));
    if (objective.cap_row) {
        const auto& r = *objective.cap_row;
        m.cap_row = pb.add_row(r.name, r.sense, r.rhs, std::span<const Term>(r.terms));
    }
    m.problem = pb.build(gated.name.empty() ? "carrierflow" : gated.name);
    return m;
}

Model build_model(const EnergySystem& system, const ScenarioSpec& scenario, const ObjectiveMode& mode,
                  kernels::Execution e) {
    return build_model(apply_scenario(system, scenario), mode, e);
}

}  // namespace carrierflow
