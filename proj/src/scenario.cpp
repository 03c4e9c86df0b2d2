#include "carrierflow/scenario.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

#include "carrierflow/branch_and_bound.hpp"
#include "carrierflow/errors.hpp"
#include "carrierflow/system_io.hpp"
#include "carrierflow/warm_start.hpp"

namespace carrierflow {

bool operator==(const EmissionTotals& a, const EmissionTotals& b) {
    return a.tec == b.tec && a.imp == b.imp && a.total == b.total;
}

bool operator==(const CostBreakdown& a, const CostBreakdown& b) {
    return a.tec == b.tec && a.netw == b.netw && a.imp == b.imp && a.co2 == b.co2 && a.total == b.total;
}

bool ScenarioOutcome::operator==(const ScenarioOutcome& o) const {
    return scenario_id == o.scenario_id && mode == o.mode && system_digest == o.system_digest && status == o.status &&
           objective == o.objective && emissions == o.emissions && costs == o.costs &&
           shadow_carbon_price == o.shadow_carbon_price && mip_gap == o.mip_gap && iterations == o.iterations &&
           nodes == o.nodes && warm_start_stages == o.warm_start_stages && metrics == o.metrics &&
           new_capacities == o.new_capacities && capacity_table == o.capacity_table && sizes == o.sizes;
}

namespace {

bool is_size_column(const ColumnSpec& c) { return c.key.role == VarRole::size || c.key.role == VarRole::build; }

SolveResult solve_with_warm_start(const Model& m, const SizeMap& base_sizes, const SolveOptions& opt,
                                  std::vector<std::string>& stages) {
    WarmStartBase base{std::vector<double>(m.index.size(), std::numeric_limits<double>::quiet_NaN()), std::nullopt};
    FixSchedule schedule;
    for (int j = 0; j < m.index.size(); ++j) {
        const auto& c = m.index.column(j);
        if (!is_size_column(c)) continue;
        const auto it = base_sizes.find(c.name);
        if (it != base_sizes.end()) {
            base.values[j] = it->second;
            schedule.prior_columns.push_back(j);
        } else {
            schedule.new_columns.push_back(j);
        }
    }
    WarmStartResult ws = warm_start_solve(m.problem, base, schedule, opt);
    for (const auto& s : ws.stages) stages.push_back(to_string(s.status));
    return ws.final_result();
}

double minimum_emissions(const EnergySystem& gated, const SolveOptions& opt) {
    const Model m = build_model(gated, ObjectiveMode::min_emissions(), opt.execution);
    const SolveResult r = solve(m.problem, opt);
    return r.optimal() ? r.objective : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

ScenarioRun run_scenario(const EnergySystem& system, const RunConfig& cfg) {
    EnergySystem gated = apply_scenario(system, cfg.scenario);
    ScenarioRun out{build_model(gated, cfg.mode, cfg.solve.execution), {}, {}};
    const Model& m = out.model;
    ScenarioOutcome& o = out.outcome;

    if (cfg.warm_start) out.result = solve_with_warm_start(m, *cfg.warm_start, cfg.solve, o.warm_start_stages);
    else out.result = solve(m.problem, cfg.solve);
    const SolveResult& r = out.result;

    switch (r.status) {
        case SolveStatus::optimal: break;
        case SolveStatus::infeasible: {
            if (cfg.mode.kind == ObjectiveMode::Kind::min_cost_with_cap) {
                const double emin = minimum_emissions(m.system, cfg.solve);
                throw InfeasibleError("emission cap " + format_double(cfg.mode.cap) + " t is below the minimum of " +
                                          format_double(emin) + " t in scenario " + cfg.scenario.id,
                                      emin);
            }
            throw InfeasibleError("scenario " + cfg.scenario.id + " is infeasible",
                                  std::numeric_limits<double>::quiet_NaN());
        }
        case SolveStatus::unbounded: throw SolverLimitError("scenario " + cfg.scenario.id + " is unbounded");
        case SolveStatus::iteration_limit:
            throw SolverLimitError("solver limit in scenario " + cfg.scenario.id + ": " + r.message);
    }

    o.scenario_id = cfg.scenario.id;
    o.mode = cfg.mode.label();
    o.system_digest = system_digest(system);
    o.status = to_string(r.status);
    o.objective = r.objective;
    o.emissions = total_emissions(m.system, m.index, r.primal);
    o.costs = cost_decomposition(m.system, m.index, r.primal);
    if (m.cap_row >= 0 && m.cap_row < static_cast<int>(r.duals.size())) o.shadow_carbon_price = -r.duals[m.cap_row];
    o.mip_gap = r.mip_gap;
    o.iterations = r.iterations;
    o.nodes = r.nodes;
    o.metrics = compute_metrics(m.system, m.index, r.primal);
    o.new_capacities = new_capacities(m.system, m.index, r.primal);
    o.capacity_table = aggregate_capacities(o.new_capacities);
    for (int j = 0; j < m.index.size(); ++j)
        if (is_size_column(m.index.column(j))) o.sizes[m.index.column(j).name] = r.primal[j];
    return out;
}

ScenarioOutcome run(const EnergySystem& system, const RunConfig& config) {
    return run_scenario(system, config).outcome;
}

AbatementCurve abatement_sweep(const EnergySystem& system, const ScenarioSpec& scenario,
                               const std::vector<double>& targets, const SolveOptions& options) {
    for (double f : targets)
        if (!(f >= 0.0 && f <= 1.0)) throw DomainError("reduction fractions must lie in [0, 1]");
    RunConfig cfg;
    cfg.scenario = scenario;
    cfg.solve = options;
    cfg.mode = ObjectiveMode::min_cost();
    const ScenarioOutcome ref = run(system, cfg);

    AbatementCurve curve;
    curve.scenario_id = scenario.id;
    curve.reference_cost = ref.objective;
    curve.reference_emissions = ref.emissions.total;
    if (!(ref.emissions.total > 0.0)) throw DomainError("reference emissions are zero; abatement is undefined");

    for (double f : targets) {
        AbatementPoint p;
        p.target_fraction = f;
        p.emission_cap = (1.0 - f) * ref.emissions.total;
        if (f == 0.0) {
            p.status = "optimal";
            p.cost = ref.objective;
            p.emissions = ref.emissions.total;
            curve.points.push_back(p);
            continue;
        }
        cfg.mode = ObjectiveMode::with_cap(p.emission_cap);
        try {
            const ScenarioOutcome o = run(system, cfg);
            p.status = o.status;
            p.cost = o.objective;
            p.emissions = o.emissions.total;
            const double abated = ref.emissions.total - o.emissions.total;
            if (abated > 0.0) p.abatement_cost = (o.objective - ref.objective) / abated;
        } catch (const InfeasibleError&) {
            p.status = "infeasible";
        }
        curve.points.push_back(p);
    }
    return curve;
}

std::optional<ScenarioOutcome> OutcomeCache::find(const std::string& digest, const std::string& scenario,
                                                  const std::string& mode) const {
    std::lock_guard lock(mutex_);
    const auto it = entries_.find({digest, scenario, mode});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void OutcomeCache::store(const ScenarioOutcome& o) {
    std::lock_guard lock(mutex_);
    entries_[{o.system_digest, o.scenario_id, o.mode}] = o;
}

std::size_t OutcomeCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

ScenarioOutcome run_cached(const EnergySystem& system, const RunConfig& config, OutcomeCache& cache) {
    const std::string digest = system_digest(system);
    if (!config.warm_start)
        if (auto hit = cache.find(digest, config.scenario.id, config.mode.label())) return *hit;
    ScenarioOutcome o = run(system, config);
    if (!config.warm_start) cache.store(o);
    return o;
}

std::vector<MatrixEntry> run_matrix(const EnergySystem& system, const std::vector<ScenarioSpec>& scenarios,
                                    const std::vector<ObjectiveMode>& modes, int jobs, const SolveOptions& options,
                                    OutcomeCache* cache) {
    require_valid(system);
    const int n = static_cast<int>(scenarios.size() * modes.size());
    std::vector<MatrixEntry> entries(n);
    jobs = std::max(1, jobs);
    SolveOptions opt = options;
    if (jobs > 1) opt.execution = kernels::Execution::serial;
    OutcomeCache local;
    OutcomeCache& store = cache ? *cache : local;

#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) if (jobs > 1)
    for (int i = 0; i < n; ++i) {
        const ScenarioSpec& spec = scenarios[i / modes.size()];
        const ObjectiveMode& mode = modes[i % modes.size()];
        MatrixEntry& e = entries[i];
        e.scenario_id = spec.id;
        e.mode = mode.label();
        RunConfig cfg;
        cfg.scenario = spec;
        cfg.mode = mode;
        cfg.solve = opt;
        try {
            e.outcome = run_cached(system, cfg, store);
        } catch (const InfeasibleError& err) {
            e.error = err.what();
            e.error_kind = 4;
        } catch (const SolverLimitError& err) {
            e.error = err.what();
            e.error_kind = 5;
        } catch (const std::exception& err) {
            e.error = err.what();
            e.error_kind = 3;
        }
    }
    return entries;
}

}  // namespace carrierflow
