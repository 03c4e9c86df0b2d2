// Acceptance report: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "carrierflow/costing.hpp"
#include "carrierflow/data_pipeline.hpp"
#include "carrierflow/miniature.hpp"
#include "carrierflow/network_constraints.hpp"
#include "carrierflow/scenario.hpp"
#include "carrierflow/technology_constraints.hpp"
#include "carrierflow/verify.hpp"
#include "support/golden.hpp"
#include "support/random_lp.hpp"
#include "support/systems.hpp"
#include "support/vertex_oracle.hpp"

using namespace carrierflow;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

ScenarioRun solve_scenario(const EnergySystem& sys, const std::string& id, const ObjectiveMode& mode) {
    return run_scenario(sys, {scenario_by_id(id), mode, {}, {}, {}});
}

double row_activity(const SparseProblem& p, const std::vector<double>& x, int row) {
    double a = 0.0;
    for (int j = 0; j < p.num_cols; ++j)
        for (int k = p.col_start[j]; k < p.col_start[j + 1]; ++k)
            if (p.row_index[k] == row) a += p.values[k] * x[j];
    return a;
}

// Largest |a x - b| / max(1, |b|, sum |a_j x_j|) over the nodal balance rows.
double worst_balance_residual(const SparseProblem& p, const std::vector<double>& x, int& rows) {
    std::vector<double> act(p.num_rows, 0.0), mag(p.num_rows, 0.0);
    for (int j = 0; j < p.num_cols; ++j)
        for (int k = p.col_start[j]; k < p.col_start[j + 1]; ++k) {
            act[p.row_index[k]] += p.values[k] * x[j];
            mag[p.row_index[k]] += std::abs(p.values[k] * x[j]);
        }
    double worst = 0.0;
    rows = 0;
    for (int i = 0; i < p.num_rows; ++i) {
        if (p.row_names[i].find(".balance.") == std::string::npos) continue;
        ++rows;
        worst = std::max(worst, std::abs(act[i] - p.rhs[i]) / std::max({1.0, std::abs(p.rhs[i]), mag[i]}));
    }
    return worst;
}

const std::vector<std::string> kHeadline{"reference", "t-all", "s-all", "h-all", "synergies"};

Verdict balances() {
    Verdict v;
    double worst = 0.0, slowest = 0.0;
    int instances = 0;
    for (int steps : {24, 168}) {
        const EnergySystem sys = build_miniature_system(0, steps);
        for (const auto& id : kHeadline)
            for (const auto& mode : {ObjectiveMode::min_cost(), ObjectiveMode::min_emissions()}) {
                const auto t0 = Clock::now();
                const ScenarioRun r = solve_scenario(sys, id, mode);
                const double dt = seconds_since(t0);
                int rows = 0;
                const double res = worst_balance_residual(r.model.problem, r.result.primal, rows);
                worst = std::max(worst, res);
                slowest = std::max(slowest, dt);
                ++instances;
                v.require(rows > 0, id + " has no balance rows");
                v.require(res <= 1e-9, fmt::format("{} {} steps residual {:.3g}", id, steps, res));
                v.require(dt <= 10.0, fmt::format("{} {} {} steps took {:.2f} s", id, mode.label(), steps, dt));
            }
    }
    v.detail = fmt::format("{} instances, worst residual {:.3g}, slowest {:.2f} s", instances, worst, slowest) +
               (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

Verdict lp_oracles() {
    Verdict v;
    std::mt19937_64 rng(20240611);
    int lp_feasible = 0, lp_mismatch = 0;
    double lp_worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const SparseProblem p = oracle::random_lp(rng);
        const auto expected = oracle::solve_by_vertices(oracle::densify(p));
        const SolveResult r = solve_lp(p);
        if (!expected) {
            lp_mismatch += r.status != SolveStatus::infeasible;
            continue;
        }
        ++lp_feasible;
        if (!r.optimal()) {
            ++lp_mismatch;
            continue;
        }
        const double err = std::abs(r.objective - *expected) / std::max(1.0, std::abs(*expected));
        lp_worst = std::max(lp_worst, err);
        lp_mismatch += err > 1e-8;
    }
    std::mt19937_64 mrng(31337);
    int milp_checked = 0, milp_mismatch = 0;
    double milp_worst = 0.0;
    for (int trial = 0; trial < 120; ++trial) {
        const SparseProblem p = oracle::random_lp(mrng, 6, 6, 1 + trial % 2, 4);
        const auto expected = oracle::solve_by_enumeration(oracle::densify(p));
        const SolveResult r = solve(p);
        if (!expected) {
            milp_mismatch += r.status != SolveStatus::infeasible;
            continue;
        }
        ++milp_checked;
        if (!r.optimal()) {
            ++milp_mismatch;
            continue;
        }
        const double err = std::abs(r.objective - *expected) / std::max(1.0, std::abs(*expected));
        milp_worst = std::max(milp_worst, err);
        milp_mismatch += err > 1e-9;
    }
    v.require(lp_mismatch == 0, fmt::format("{} LP mismatches", lp_mismatch));
    v.require(milp_mismatch == 0, fmt::format("{} MILP mismatches", milp_mismatch));
    v.require(lp_feasible >= 100 && milp_checked >= 60, "too few feasible instances");
    v.detail = fmt::format("200 LPs ({} feasible, worst {:.2g}), 120 MILPs ({} feasible, worst {:.2g})", lp_feasible,
                           lp_worst, milp_checked, milp_worst) +
               (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

Verdict storage_physics() {
    Verdict v;
    const double lambda = 4.168e-5;
    double decay = 0.0;
    for (int n : {1, 2, 24, 168, 8760}) decay = std::max(decay, std::abs(storage_retention(lambda, n) - std::pow(1.0 - lambda, n)));
    v.require(decay <= 1e-12, fmt::format("decay error {:.3g}", decay));

    const ScenarioRun r = solve_scenario(build_miniature_system(0), "synergies", ObjectiveMode::min_cost());
    const auto& g = r.model.system;
    const auto& idx = r.model.index;
    const auto& x = r.result.primal;
    double telescope = 0.0;
    int stores = 0;
    for (int ti = 0; ti < static_cast<int>(g.technologies.size()); ++ti) {
        const auto& t = g.technologies[ti];
        if (!t.is_storage() || !is_active(t)) continue;
        const auto& p = t.storage;
        const double keep = storage_retention(p.self_discharge, g.horizon.hours_per_step);
        const int T = g.horizon.step_count;
        double net = 0.0, scale = 1.0;
        for (int k = 0; k < T; ++k) {
            const double in = x[idx.tech(ti, VarRole::charge, p.carrier, k)];
            const double out = x[idx.tech(ti, VarRole::discharge, p.carrier, k)];
            const double prev = x[idx.tech(ti, VarRole::state_of_charge, p.carrier, (k + T - 1) % T)];
            double term = p.charge_efficiency * in - out / p.discharge_efficiency - (1.0 - keep) * prev;
            if (t.kind == TechKind::storage2_1)
                term += g.hydro_inflows.at(t.id)[k] - x[idx.tech(ti, VarRole::spill, p.carrier, k)];
            net += term;
            scale = std::max({scale, in, out, prev});
        }
        telescope = std::max(telescope, std::abs(net) / (scale * T));
        ++stores;
    }
    v.require(stores > 0 && telescope <= 1e-9, fmt::format("telescoping error {:.3g}", telescope));

    EnergySystem s = toy::system(2);
    s.nodes = {toy::node("A")};
    s.technologies.push_back(toy::renewable("pv", "A", 100.0));
    s.renewable_profiles["pv"] = {100.0, 0.0};
    s.technologies.push_back(toy::battery("bat", "A", 1000.0, 0.0, 0.985, 0.975));
    toy::demand(s, "A", Carrier::electricity, {0.0, 50.0});
    const auto solved = toy::solve_gated(s);
    double trip = 1.0;
    if (solved.result.optimal())
        trip = std::abs(solved.tech("bat", VarRole::discharge, Carrier::electricity, 1) /
                            solved.tech("bat", VarRole::charge, Carrier::electricity, 0) -
                        0.985 * 0.975);
    v.require(trip <= 1e-9, fmt::format("round trip error {:.3g}", trip));
    v.detail = fmt::format("decay {:.2g}, telescoping {:.2g} over {} stores, round trip {:.2g}", decay, telescope,
                           stores, trip) +
               (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

Verdict compression() {
    Verdict v;
    const CompressionParams p;
    const double k = pipeline_compression_factor(p);
    const long double c = 0.00398L, temp = 300.0L, eta = 0.65L, lhv = 33.32L, gamma = 1.405L;
    const double expected =
        static_cast<double>(c * temp / (eta * lhv) * (std::pow(140.0L / 30.0L, (gamma - 1.0L) / gamma) - 1.0L));
    const double err = std::abs(k - expected) / expected;
    CompressionParams flat = p;
    flat.outlet_pressure_bar = flat.reference_pressure_bar;
    const double k0 = pipeline_compression_factor(flat);
    v.require(err <= 1e-9, fmt::format("relative error {:.3g}", err));
    v.require(k0 == 0.0, fmt::format("k at p_ref is {:.3g}", k0));
    v.detail = fmt::format("k = {:.10f}, relative error {:.2g}, k(p_ref) = {}", k, err, k0) +
               (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

Verdict dominance() {
    Verdict v;
    const EnergySystem sys = build_miniature_system(0);
    const auto cost = [&](const char* id) { return run(sys, {scenario_by_id(id), ObjectiveMode::min_cost(), {}, {}, {}}).objective; };
    const auto emin = [&](const char* id) {
        return run(sys, {scenario_by_id(id), ObjectiveMode::min_emissions(), {}, {}, {}}).objective;
    };
    const double c_syn = cost("synergies"), c_t = cost("t-all"), c_ref = cost("reference");
    const double e_syn = emin("synergies"), e_s = emin("s-all"), e_ref = emin("reference");
    const double slack = 1e-6;
    v.require(c_syn <= c_t * (1 + slack) && c_t <= c_ref * (1 + slack), "cost chain broken");
    v.require(e_syn <= e_s * (1 + slack) && e_s <= e_ref * (1 + slack), "emission chain broken");
    int gated = 0;
    for (const char* id : {"t-1", "t-2", "t-3", "s-1", "s-2", "h-1", "h-2", "h-3", "h-4"}) {
        const ScenarioSpec spec = scenario_by_id(id);
        const ScenarioRun r = solve_scenario(sys, id, ObjectiveMode::min_cost());
        const auto& idx = r.model.index;
        for (int ti = 0; ti < static_cast<int>(sys.technologies.size()); ++ti) {
            const auto& t = sys.technologies[ti];
            if (!t.expandable || scenario_allows(sys, spec, t)) continue;
            ++gated;
            const int col = idx.tech_size(ti);
            if (col >= 0 && r.result.primal[col] != 0.0) v.require(false, fmt::format("{} expands {}", id, t.id));
        }
        for (int bi = 0; bi < static_cast<int>(sys.branches.size()); ++bi) {
            const auto& b = sys.branches[bi];
            if (!b.expandable || scenario_allows(sys, spec, b)) continue;
            ++gated;
            for (int dir : {kForward, kBackward}) {
                const int col = idx.branch(bi, VarRole::size, dir, 0);
                if (col >= 0 && r.result.primal[col] != 0.0) v.require(false, fmt::format("{} expands {}", id, b.id));
            }
        }
    }
    v.detail = fmt::format("cost {:.6g} <= {:.6g} <= {:.6g}; min emissions {:.6g} <= {:.6g} <= {:.6g}; {} gated entities",
                           c_syn, c_t, c_ref, e_syn, e_s, e_ref, gated) +
               (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

Verdict abatement() {
    Verdict v;
    const EnergySystem sys = build_miniature_system(0);
    const std::vector<double> targets{0.0, 0.01, 0.02, 0.05, 0.1, 0.3};
    int feasible_points = 0;
    for (const char* id : {"s-all", "h-all", "t-all", "synergies"}) {
        const AbatementCurve c = abatement_sweep(sys, scenario_by_id(id), targets);
        const AbatementPoint* prev = nullptr;
        for (const auto& p : c.points) {
            if (!p.cost) continue;
            ++feasible_points;
            if (prev) {
                v.require(*p.cost >= *prev->cost * (1.0 - 1e-7),
                          fmt::format("{} cost falls at f = {}", id, p.target_fraction));
                if (prev->abatement_cost && p.abatement_cost)
                    v.require(*p.abatement_cost >= *prev->abatement_cost * (1.0 - 1e-7),
                              fmt::format("{} abatement cost falls at f = {}", id, p.target_fraction));
            }
            prev = &p;
        }
        const ScenarioOutcome free = run(sys, {scenario_by_id(id), ObjectiveMode::min_cost(), {}, {}, {}});
        const ScenarioOutcome capped =
            run(sys, {scenario_by_id(id), ObjectiveMode::with_cap(free.emissions.total), {}, {}, {}});
        v.require(rel_close(capped.objective, free.objective, 1e-6), fmt::format("{} cap at E(min-cost) moves cost", id));
    }
    v.detail = fmt::format("4 sweeps, {} feasible points", feasible_points) + (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

Verdict warm_start() {
    Verdict v;
    const EnergySystem sys = build_miniature_system(0);
    const ScenarioOutcome base = run(sys, {scenario_by_id("t-all"), ObjectiveMode::min_cost(), {}, {}, {}});
    const ScenarioOutcome cold = run(sys, {scenario_by_id("synergies"), ObjectiveMode::min_cost(), {}, {}, {}});
    const ScenarioOutcome warm = run(sys, {scenario_by_id("synergies"), ObjectiveMode::min_cost(), {}, {}, base.sizes});
    const double err = std::abs(warm.objective - cold.objective) / std::abs(cold.objective);
    v.require(err <= 1e-6, fmt::format("relative gap {:.3g}", err));
    std::string stages;
    for (const auto& s : warm.warm_start_stages) {
        v.require(s != "infeasible", "infeasible stage");
        stages += (stages.empty() ? "" : "/") + s;
    }
    v.require(warm.warm_start_stages.size() == 3, "stage count");
    v.detail = fmt::format("stages {}, relative gap {:.2g}", stages, err) + (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

Verdict decomposition() {
    Verdict v;
    const EnergySystem sys = build_miniature_system(0);
    double worst_cost = 0.0, worst_cap = 0.0;
    for (const auto& id : kHeadline) {
        const ScenarioRun r = solve_scenario(sys, id, ObjectiveMode::min_cost());
        const CostBreakdown c = cost_decomposition(r.model.system, r.model.index, r.result.primal);
        worst_cost = std::max(worst_cost,
                              std::abs(c.tec + c.netw + c.imp + c.co2 - r.result.objective) / std::abs(r.result.objective));
        const ScenarioRun capped = solve_scenario(sys, id, ObjectiveMode::with_cap(r.outcome.emissions.total));
        const EmissionTotals e = total_emissions(capped.model.system, capped.model.index, capped.result.primal);
        const double act = row_activity(capped.model.problem, capped.result.primal, capped.model.cap_row);
        worst_cap = std::max(worst_cap, std::abs(e.total - act) / std::max(1.0, e.total));
    }
    v.require(worst_cost <= 1e-6, fmt::format("cost closure {:.3g}", worst_cost));
    v.require(worst_cap <= 1e-9, fmt::format("emission closure {:.3g}", worst_cap));
    v.detail = fmt::format("cost closure {:.2g}, cap row closure {:.2g}", worst_cost, worst_cap) +
               (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

Verdict pipeline() {
    Verdict v;
    const auto regions = read_region_capacities("fixtures/pipeline/regions.csv");
    const auto targets = read_national_targets("fixtures/pipeline/targets.csv");
    const auto nodes = allocate_to_nodes(regions, targets);
    double alloc = 0.0, allocated = 0.0, target_total = 0.0;
    for (const auto& [country, target] : targets) {
        std::vector<RegionCapacity> in_country;
        for (const auto& r : regions)
            if (r.country == country) in_country.push_back(r);
        double sum = 0.0;
        for (double c : allocate_country(in_country, target)) sum += c;
        alloc = std::max(alloc, std::abs(sum - target) / target);
        target_total += target;
    }
    for (const auto& [node, c] : nodes) allocated += c;
    alloc = std::max(alloc, std::abs(allocated - target_total) / target_total);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(50.0, 150.0);
    std::vector<double> national(168);
    for (auto& d : national) d = u(rng);
    const std::vector<NodeKeys> keys{{"N1", 0.5, 0.6}, {"N2", 0.3, 0.25}, {"N3", 0.2, 0.15}};
    const auto split = split_industrial_demand(national, 0.35, keys);
    double demand = 0.0, node_total = 0.0, national_total = 0.0;
    for (const auto& [n, series] : split)
        for (double x : series) node_total += x;
    for (double x : national) national_total += x;
    demand = std::abs(node_total - national_total) / national_total;
    for (std::size_t t = 0; t < national.size(); ++t) {
        double s = 0.0;
        for (const auto& [n, series] : split) s += series[t];
        demand = std::max(demand, std::abs(s - national[t]) / national[t]);
    }
    const double h1 = std::abs(height_factor(100.0, 110.0, kOnshoreShearExponent) - std::pow(110.0 / 100.0, 1.0 / 7.0));
    const double h2 = std::abs(height_factor(100.0, 120.0, kOffshoreShearExponent) - std::pow(120.0 / 100.0, 0.11));
    v.require(alloc <= 1e-9, fmt::format("allocation error {:.3g}", alloc));
    v.require(demand <= 1e-9, fmt::format("split error {:.3g}", demand));
    v.require(h1 <= 1e-12 && h2 <= 1e-12, fmt::format("height errors {:.3g} {:.3g}", h1, h2));
    v.detail = fmt::format("allocation {:.2g}, split {:.2g}, height factors {:.2g} {:.2g}", alloc, demand, h1, h2) +
               (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

Verdict golden_case(Clock::time_point start) {
    Verdict v;
    const golden::Dispatch d = golden::closed_form();
    const auto s = toy::solve_gated(golden::system());
    double worst = 0.0;
    if (!s.result.optimal()) {
        v.require(false, "not optimal");
    } else {
        for (int t = 0; t < 4; ++t) {
            worst = std::max({worst, std::abs(s.tech("wind", VarRole::output, Carrier::electricity, t) - d.wind[t]),
                              std::abs(s.tech("gas", VarRole::output, Carrier::electricity, t) - d.gas[t]),
                              std::abs(s.branch("ab", VarRole::sent, kForward, t) - d.a_to_b[t]),
                              std::abs(s.branch("ab", VarRole::sent, kBackward, t) - d.b_to_a[t]),
                              std::abs(s.branch("ab", VarRole::received, kForward, t) - d.received_at_b[t])});
        }
        worst = std::max(worst, std::abs(s.result.objective - d.objective) / d.objective);
    }
    v.require(worst <= 1e-9, fmt::format("golden error {:.3g}", worst));
    const double elapsed = seconds_since(start);
    v.require(elapsed <= 120.0, fmt::format("acceptance run took {:.1f} s", elapsed));
    v.detail = fmt::format("worst flow/objective error {:.2g}, acceptance runtime {:.1f} s", worst, elapsed) +
               (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

}  // namespace

int main() {
    const auto start = Clock::now();
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"nodal balances", balances},
        {"LP and MILP oracles", lp_oracles},
        {"storage physics", storage_physics},
        {"compression factor", compression},
        {"scenario dominance and gating", dominance},
        {"abatement monotonicity", abatement},
        {"three-stage warm start", warm_start},
        {"cost and emission closure", decomposition},
        {"data pipeline conservation", pipeline},
        {"analytic golden case", [start] { return golden_case(start); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        failed += !v.pass;
        fmt::print("criterion {:2} {} {}: {}\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first, v.detail);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria pass\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
