#pragma once

// Brute-force LP oracle for tiny box-bounded problems: every basic feasible
// point is visited by choosing which constraints are active.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "carrierflow/sparse_problem.hpp"

namespace oracle {

struct DenseLp {
    int n = 0;
    int m = 0;
    Eigen::MatrixXd a;  // m x n
    std::vector<carrierflow::RowSense> sense;
    std::vector<double> rhs, lower, upper, cost;
    std::vector<char> integer;
};

inline DenseLp densify(const carrierflow::SparseProblem& p) {
    DenseLp d;
    d.n = p.num_cols;
    d.m = p.num_rows;
    d.a = Eigen::MatrixXd::Zero(d.m, d.n);
    for (int j = 0; j < d.n; ++j)
        for (int k = p.col_start[j]; k < p.col_start[j + 1]; ++k) d.a(p.row_index[k], j) = p.values[k];
    d.sense = p.sense;
    d.rhs = p.rhs;
    d.lower = p.lower;
    d.upper = p.upper;
    d.cost = p.objective;
    d.integer = p.integer;
    return d;
}

inline bool feasible(const DenseLp& lp, const Eigen::VectorXd& x, double tol) {
    for (int j = 0; j < lp.n; ++j)
        if (x[j] < lp.lower[j] - tol || x[j] > lp.upper[j] + tol) return false;
    const Eigen::VectorXd ax = lp.a * x;
    for (int i = 0; i < lp.m; ++i) {
        const double scale = std::max(1.0, std::abs(lp.rhs[i]));
        const double r = ax[i] - lp.rhs[i];
        if (lp.sense[i] == carrierflow::RowSense::less_equal && r > tol * scale) return false;
        if (lp.sense[i] == carrierflow::RowSense::greater_equal && r < -tol * scale) return false;
        if (lp.sense[i] == carrierflow::RowSense::equal && std::abs(r) > tol * scale) return false;
    }
    return true;
}

/// Minimum objective over all vertices, or nullopt when infeasible. Bounds must
/// be finite.
inline std::optional<double> solve_by_vertices(const DenseLp& lp) {
    const int n = lp.n;
    // Any n linearly independent tight constraints define a vertex; equalities
    // are enforced by the feasibility check.
    std::optional<double> best;
    std::vector<int> chosen_rows;
    // state per variable: 0 free, 1 at lower, 2 at upper
    std::vector<int> state(n, 0);

    auto evaluate = [&]() {
        Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(n, n);
        Eigen::VectorXd b(n);
        int r = 0;
        for (int i : chosen_rows) {
            sys.row(r) = lp.a.row(i);
            b[r++] = lp.rhs[i];
        }
        for (int j = 0; j < n; ++j) {
            if (state[j] == 0) continue;
            sys(r, j) = 1.0;
            b[r++] = state[j] == 1 ? lp.lower[j] : lp.upper[j];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
        lu.setThreshold(1e-10);
        if (lu.rank() < n) return;
        const Eigen::VectorXd x = lu.solve(b);
        if (!feasible(lp, x, 1e-9)) return;
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += lp.cost[j] * x[j];
        if (!best || obj < *best) best = obj;
    };

    const int need = n;
    std::function<void(int, int)> pick_bounds = [&](int j, int remaining) {
        if (remaining == 0) {
            evaluate();
            return;
        }
        if (j == n || n - j < remaining) return;
        for (int s = 1; s <= 2; ++s) {
            state[j] = s;
            pick_bounds(j + 1, remaining - 1);
        }
        state[j] = 0;
        pick_bounds(j + 1, remaining);
    };
    std::function<void(std::size_t)> pick_rows = [&](std::size_t k) {
        const int k_rows = static_cast<int>(chosen_rows.size());
        if (k_rows <= need) pick_bounds(0, need - k_rows);
        if (k_rows == need) return;
        for (std::size_t i = k; i < static_cast<std::size_t>(lp.m); ++i) {
            chosen_rows.push_back(static_cast<int>(i));
            pick_rows(i + 1);
            chosen_rows.pop_back();
        }
    };
    pick_rows(0);
    return best;
}

/// Exhaustive integer enumeration over marked columns, vertex oracle inside.
inline std::optional<double> solve_by_enumeration(DenseLp lp) {
    std::vector<int> ints;
    for (int j = 0; j < lp.n; ++j)
        if (lp.integer[j]) ints.push_back(j);
    const std::vector<double> lo = lp.lower, hi = lp.upper;
    std::optional<double> best;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == ints.size()) {
            auto v = solve_by_vertices(lp);
            if (v && (!best || *v < *best)) best = v;
            return;
        }
        const int j = ints[k];
        for (double v = std::ceil(lo[j]); v <= std::floor(hi[j]); v += 1.0) {
            lp.lower[j] = lp.upper[j] = v;
            rec(k + 1);
        }
        lp.lower[j] = lo[j];
        lp.upper[j] = hi[j];
    };
    rec(0);
    return best;
}

}  // namespace oracle
