#include "carrierflow/branch_and_bound.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace carrierflow {

namespace {

struct BoundChange {
    int col;
    double lower;
    double upper;
};

struct Node {
    double bound;
    long id;
    std::vector<BoundChange> changes;
    Basis basis;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        return a.id > b.id;
    }
};

int most_fractional(const SparseProblem& p, const std::vector<double>& x, double tol) {
    int best = -1;
    double best_dist = tol;
    for (int j = 0; j < p.num_cols; ++j) {
        if (!p.integer[j]) continue;
        const double frac = x[j] - std::floor(x[j]);
        const double dist = std::min(frac, 1.0 - frac);
        if (dist > best_dist) {
            best = j;
            best_dist = dist;
        }
    }
    return best;
}

}  // namespace

SolveResult solve_milp(const SparseProblem& problem, const SolveOptions& options) {
    if (!problem.has_integers()) return solve_lp(problem, options);
    problem.validate();

    SparseProblem work = problem;
    SolveOptions lp_opt = options;
    lp_opt.incumbent_objective.reset();
    lp_opt.incumbent_values.reset();

    double incumbent = kInf;
    std::vector<double> incumbent_x;
    Basis incumbent_basis;
    if (options.incumbent_objective && options.incumbent_values &&
        static_cast<int>(options.incumbent_values->size()) == problem.num_cols) {
        incumbent = *options.incumbent_objective;
        incumbent_x = *options.incumbent_values;
    }

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    open.push(Node{-kInf, 0, {}, options.start_basis.value_or(Basis{})});
    long next_id = 1;
    long nodes = 0;
    long iterations = 0;
    bool hit_limit = false;
    bool lp_trouble = false;

    while (!open.empty()) {
        if (open.top().bound >= incumbent - options.mip_gap) break;
        if (nodes >= options.node_limit) {
            hit_limit = true;
            break;
        }
        Node node = open.top();
        open.pop();
        ++nodes;

        work.lower = problem.lower;
        work.upper = problem.upper;
        for (const auto& c : node.changes) {
            work.lower[c.col] = c.lower;
            work.upper[c.col] = c.upper;
        }
        if (node.basis.empty()) lp_opt.start_basis.reset();
        else lp_opt.start_basis = node.basis;
        SolveResult lp = solve_lp(work, lp_opt);
        iterations += lp.iterations;

        if (lp.status == SolveStatus::infeasible) continue;
        if (lp.status == SolveStatus::unbounded) {
            SolveResult r = lp;
            r.nodes = nodes;
            r.iterations = iterations;
            return r;
        }
        if (lp.status == SolveStatus::iteration_limit) {
            lp_trouble = true;
            continue;
        }
        if (lp.objective >= incumbent - options.mip_gap) continue;

        const int branch = most_fractional(work, lp.primal, options.integrality_tol);
        if (branch < 0) {
            incumbent = lp.objective;
            incumbent_x = lp.primal;
            incumbent_basis = lp.basis;
            continue;
        }
        const double v = lp.primal[branch];
        Node down{lp.objective, next_id++, node.changes, lp.basis};
        down.changes.push_back({branch, work.lower[branch], std::floor(v)});
        Node up{lp.objective, next_id++, node.changes, lp.basis};
        up.changes.push_back({branch, std::ceil(v), work.upper[branch]});
        open.push(std::move(down));
        open.push(std::move(up));
    }

    double best_bound = incumbent;
    if (!open.empty()) best_bound = std::min(best_bound, open.top().bound);

    SolveResult res;
    res.nodes = nodes;
    res.iterations = iterations;
    if (incumbent_x.empty()) {
        res.status = (hit_limit || lp_trouble) ? SolveStatus::iteration_limit : SolveStatus::infeasible;
        res.message = hit_limit ? "node limit without incumbent" : "no integer feasible point";
        res.best_bound = best_bound;
        return res;
    }

    // Re-solve with integers fixed to obtain duals and a clean basis.
    work.lower = problem.lower;
    work.upper = problem.upper;
    for (int j = 0; j < problem.num_cols; ++j)
        if (problem.integer[j]) work.lower[j] = work.upper[j] = std::round(incumbent_x[j]);
    if (incumbent_basis.empty()) lp_opt.start_basis.reset();
    else lp_opt.start_basis = incumbent_basis;
    SolveResult fixed = solve_lp(work, lp_opt);
    res.iterations += fixed.iterations;
    if (fixed.status == SolveStatus::optimal) {
        res.primal = std::move(fixed.primal);
        res.duals = std::move(fixed.duals);
        res.reduced_costs = std::move(fixed.reduced_costs);
        res.basis = std::move(fixed.basis);
        res.objective = fixed.objective;
        incumbent = std::min(incumbent, fixed.objective);
    } else {
        res.primal = incumbent_x;
        res.objective = incumbent;
    }
    res.best_bound = std::min(best_bound, res.objective);
    res.mip_gap = std::max(0.0, res.objective - res.best_bound);
    const bool proven = !hit_limit && !lp_trouble;
    res.status = proven || res.mip_gap <= options.mip_gap ? SolveStatus::optimal : SolveStatus::iteration_limit;
    if (!proven) res.message = hit_limit ? "node limit reached" : "some node relaxations hit the iteration limit";
    return res;
}

SolveResult solve(const SparseProblem& problem, const SolveOptions& options) {
    return problem.has_integers() ? solve_milp(problem, options) : solve_lp(problem, options);
}

}  // namespace carrierflow
