#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "carrierflow/costing.hpp"
#include "carrierflow/metrics.hpp"
#include "carrierflow/model.hpp"
#include "carrierflow/scenario_spec.hpp"
#include "carrierflow/simplex.hpp"

namespace carrierflow {

/// Size and build column values of a previous run, by column name.
using SizeMap = std::map<std::string, double>;

struct RunConfig {
    ScenarioSpec scenario;
    ObjectiveMode mode = ObjectiveMode::min_cost();
    std::vector<double> targets{0.01, 0.10, 0.30};  // reduction fractions for sweeps
    SolveOptions solve;
    std::optional<SizeMap> warm_start;
};

struct ScenarioOutcome {
    std::string scenario_id;
    std::string mode;          // ObjectiveMode::label()
    std::string system_digest;
    std::string status;        // to_string(SolveStatus)
    double objective = 0.0;
    EmissionTotals emissions;
    CostBreakdown costs;
    std::optional<double> shadow_carbon_price;  // EUR/t, cap runs only
    double mip_gap = 0.0;
    long iterations = 0;
    long nodes = 0;
    std::vector<std::string> warm_start_stages;  // stage statuses when warm started
    Metrics metrics;
    std::vector<NewCapacity> new_capacities;
    std::vector<CapacityRow> capacity_table;
    SizeMap sizes;

    bool operator==(const ScenarioOutcome&) const;
};

/// Everything behind an outcome, for inspection and tests.
struct ScenarioRun {
    Model model;
    SolveResult result;
    ScenarioOutcome outcome;
};

/// Gates the system, builds and solves the problem. Throws InfeasibleError
/// (with the scenario's minimum emissions for cap runs), SolverLimitError on
/// iteration or node limits, WarmStartError when a warm start cannot start.
ScenarioRun run_scenario(const EnergySystem& system, const RunConfig& config);
ScenarioOutcome run(const EnergySystem& system, const RunConfig& config);

bool operator==(const EmissionTotals& a, const EmissionTotals& b);
bool operator==(const CostBreakdown& a, const CostBreakdown& b);

struct AbatementPoint {
    double target_fraction = 0.0;
    double emission_cap = 0.0;
    std::string status;                    // optimal or infeasible
    std::optional<double> cost;
    std::optional<double> emissions;
    std::optional<double> abatement_cost;  // EUR/t, none at f = 0 or when infeasible

    bool operator==(const AbatementPoint&) const = default;
};

struct AbatementCurve {
    std::string scenario_id;
    double reference_cost = 0.0;
    double reference_emissions = 0.0;
    std::vector<AbatementPoint> points;

    bool operator==(const AbatementCurve&) const = default;
};

/// Cost-minimal runs under caps (1 - f) E_ref, where E_ref and C_ref come from
/// the scenario's own cost-optimal run. Throws DomainError for fractions
/// outside [0, 1] or when E_ref is zero.
AbatementCurve abatement_sweep(const EnergySystem& system, const ScenarioSpec& scenario,
                               const std::vector<double>& targets, const SolveOptions& options = {});

/// Outcomes keyed by (system digest, scenario id, mode). Thread safe.
class OutcomeCache {
public:
    std::optional<ScenarioOutcome> find(const std::string& digest, const std::string& scenario,
                                        const std::string& mode) const;
    void store(const ScenarioOutcome& outcome);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<std::tuple<std::string, std::string, std::string>, ScenarioOutcome> entries_;
};

/// run() through the cache.
ScenarioOutcome run_cached(const EnergySystem& system, const RunConfig& config, OutcomeCache& cache);

struct MatrixEntry {
    std::string scenario_id;
    std::string mode;
    std::optional<ScenarioOutcome> outcome;
    std::string error;      // empty on success
    int error_kind = 0;     // exit-code class: 4 infeasible, 5 solver limit, 3 data
};

/// Every (scenario, mode) pair, run concurrently on up to `jobs` threads.
/// Results come back in input order whatever the completion order.
std::vector<MatrixEntry> run_matrix(const EnergySystem& system, const std::vector<ScenarioSpec>& scenarios,
                                    const std::vector<ObjectiveMode>& modes, int jobs,
                                    const SolveOptions& options = {}, OutcomeCache* cache = nullptr);

}  // namespace carrierflow
