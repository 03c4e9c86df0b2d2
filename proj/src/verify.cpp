#include "carrierflow/verify.hpp"

#include <algorithm>
#include <cmath>

#include "carrierflow/errors.hpp"

namespace carrierflow {

VerificationReport verify_solution(const SparseProblem& p, const SolveResult& r, double tol,
                                   kernels::Execution execution) {
    if (static_cast<int>(r.primal.size()) != p.num_cols)
        throw StructuralError("verify_solution: primal vector does not match the problem");
    VerificationReport rep;
    const RowMatrix rows(p);
    std::vector<double> activity(p.num_rows);
    kernels::row_activity(execution, rows.csr(), r.primal, activity);

    std::vector<double> slack(p.num_rows, 0.0);
    for (int i = 0; i < p.num_rows; ++i) {
        double magnitude = 0.0;
        for (int k = rows.row_start[i]; k < rows.row_start[i + 1]; ++k)
            magnitude += std::abs(rows.values[k] * r.primal[rows.col_index[k]]);
        const double diff = activity[i] - p.rhs[i];
        double viol = 0.0;
        switch (p.sense[i]) {
            case RowSense::less_equal: viol = std::max(0.0, diff); break;
            case RowSense::greater_equal: viol = std::max(0.0, -diff); break;
            case RowSense::equal: viol = std::abs(diff); break;
        }
        slack[i] = diff;
        const double rel = viol / std::max({1.0, std::abs(p.rhs[i]), magnitude});
        rep.max_row_violation_abs = std::max(rep.max_row_violation_abs, viol);
        rep.max_row_violation = std::max(rep.max_row_violation, rel);
        if (rel > tol) rep.violated_rows.push_back(i);
    }

    double obj = p.objective_offset;
    double cmax = 0.0;
    for (int j = 0; j < p.num_cols; ++j) {
        const double x = r.primal[j];
        obj += p.objective[j] * x;
        cmax = std::max(cmax, std::abs(p.objective[j]));
        double bv = 0.0;
        if (x < p.lower[j]) bv = (p.lower[j] - x) / std::max(1.0, std::abs(p.lower[j]));
        if (x > p.upper[j]) bv = (x - p.upper[j]) / std::max(1.0, std::abs(p.upper[j]));
        double iv = 0.0;
        if (p.integer[j]) iv = std::abs(x - std::round(x));
        rep.max_bound_violation = std::max(rep.max_bound_violation, bv);
        rep.max_integrality_violation = std::max(rep.max_integrality_violation, iv);
        if (bv > tol || iv > 1e-6) rep.violated_columns.push_back(j);
    }
    rep.objective_recomputed = obj;
    rep.objective_error = std::abs(obj - r.objective) / std::max(1.0, std::abs(obj));

    if (!p.has_integers() && static_cast<int>(r.duals.size()) == p.num_rows) {
        rep.duals_checked = true;
        const double dscale = std::max(1.0, cmax);
        const double cscale = std::max(1.0, std::abs(obj));
        for (int i = 0; i < p.num_rows; ++i) {
            const double y = r.duals[i];
            double sign_viol = 0.0;
            if (p.sense[i] == RowSense::less_equal) sign_viol = std::max(0.0, y);
            if (p.sense[i] == RowSense::greater_equal) sign_viol = std::max(0.0, -y);
            rep.max_dual_infeasibility = std::max(rep.max_dual_infeasibility, sign_viol / dscale);
            if (p.sense[i] != RowSense::equal)
                rep.max_complementarity = std::max(rep.max_complementarity, std::abs(y * slack[i]) / cscale);
        }
        for (int j = 0; j < p.num_cols; ++j) {
            double d = p.objective[j];
            for (int k = p.col_start[j]; k < p.col_start[j + 1]; ++k) d -= r.duals[p.row_index[k]] * p.values[k];
            const double x = r.primal[j];
            const double gap_l = std::isinf(p.lower[j]) ? kInf : std::abs(x - p.lower[j]);
            const double gap_u = std::isinf(p.upper[j]) ? kInf : std::abs(p.upper[j] - x);
            const double near = 1e-9 * std::max(1.0, std::abs(x));
            double viol = 0.0;
            if (p.lower[j] == p.upper[j]) viol = 0.0;
            else if (gap_l <= near) viol = std::max(0.0, -d);
            else if (gap_u <= near) viol = std::max(0.0, d);
            else viol = std::abs(d);
            rep.max_dual_infeasibility = std::max(rep.max_dual_infeasibility, viol / dscale);
            const double dist = std::min(gap_l, gap_u);
            if (!std::isinf(dist))
                rep.max_complementarity = std::max(rep.max_complementarity, std::abs(d) * dist / cscale);
            else
                rep.max_complementarity = std::max(rep.max_complementarity, std::abs(d) * std::abs(x) / cscale);
        }
    }
    return rep;
}

}  // namespace carrierflow
