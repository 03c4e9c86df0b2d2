#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "carrierflow/errors.hpp"
#include "carrierflow/miniature.hpp"
#include "carrierflow/scenario.hpp"
#include "carrierflow/system_io.hpp"

using namespace carrierflow;

namespace {

const EnergySystem& mini() {
    static const EnergySystem s = build_miniature_system(0);
    return s;
}

// Memoized (scenario, mode) outcomes shared by the cases below.
const ScenarioOutcome& outcome(const std::string& id, const ObjectiveMode& mode) {
    static OutcomeCache cache;
    static std::map<std::pair<std::string, std::string>, ScenarioOutcome> memo;
    const auto key = std::make_pair(id, mode.label());
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, run_cached(mini(), {scenario_by_id(id), mode, {}, {}, {}}, cache)).first;
    return it->second;
}

double cost(const std::string& id) { return outcome(id, ObjectiveMode::min_cost()).objective; }
double min_emissions(const std::string& id) { return outcome(id, ObjectiveMode::min_emissions()).objective; }

}  // namespace

TEST_CASE("scenario catalog") {
    CHECK(scenario_ids().size() == 15);
    CHECK(scenario_by_id("reference") == ScenarioSpec{});
    CHECK_THROWS_AS(scenario_by_id("t-9"), DataError);
    const ScenarioSpec syn = scenario_by_id("synergies");
    for (const auto& id : scenario_ids()) {
        CAPTURE(id);
        // s-all-hpe changes the battery ratio, which makes it incomparable
        const bool ratio_differs = scenario_by_id(id).storage_power_to_energy != syn.storage_power_to_energy;
        CHECK(ScenarioSpec{}.subset_of(scenario_by_id(id)) != ratio_differs);
        CHECK(scenario_by_id(id).subset_of(syn) != ratio_differs);
    }
    CHECK(scenario_by_id("t-1").subset_of(scenario_by_id("t-all")));
    CHECK_FALSE(scenario_by_id("t-all").subset_of(scenario_by_id("t-1")));
    CHECK(scenario_by_id("h-all-2040").vres_expandable);
}

TEST_CASE("opening options never raises cost or minimum emissions") {
    const double tol = 1e-6;
    CHECK(cost("synergies") <= cost("t-all") * (1.0 + tol));
    CHECK(cost("t-all") <= cost("reference") * (1.0 + tol));
    CHECK(cost("s-all") <= cost("reference") * (1.0 + tol));
    CHECK(cost("h-all") <= cost("reference") * (1.0 + tol));
    CHECK(cost("synergies") <= cost("s-all") * (1.0 + tol));
    CHECK(cost("synergies") <= cost("h-all") * (1.0 + tol));
    CHECK(min_emissions("synergies") <= min_emissions("s-all") * (1.0 + tol));
    CHECK(min_emissions("s-all") <= min_emissions("reference") * (1.0 + tol));
    CHECK(min_emissions("t-all") <= min_emissions("reference") * (1.0 + tol));
    CHECK(min_emissions("h-all") <= min_emissions("reference") * (1.0 + tol));
}

TEST_CASE("single-option scenarios build only what they open") {
    for (const char* id : {"t-1", "t-2", "t-3", "s-1", "s-2", "h-1", "h-2", "h-3", "h-4"}) {
        CAPTURE(id);
        const ScenarioSpec spec = scenario_by_id(id);
        const ScenarioOutcome& o = outcome(id, ObjectiveMode::min_cost());
        for (const auto& add : o.new_capacities) {
            CAPTURE(add.entity);
            const int t = mini().tech_index(add.entity);
            if (t >= 0) CHECK(scenario_allows(mini(), spec, mini().technologies[t]));
            else CHECK(scenario_allows(mini(), spec, mini().branches.at(mini().branch_index(add.entity))));
        }
        for (const auto& [name, v] : o.sizes) CHECK(v >= -1e-9);
    }
    CHECK(outcome("reference", ObjectiveMode::min_cost()).new_capacities.empty());
}

TEST_CASE("cost rises and emissions fall along each abatement sweep") {
    const std::vector<double> f{0.0, 0.01, 0.02, 0.05, 0.1};
    for (const char* id : {"s-all", "h-all", "t-all", "synergies"}) {
        CAPTURE(id);
        const AbatementCurve c = abatement_sweep(mini(), scenario_by_id(id), f);
        REQUIRE(c.points.size() == f.size());
        CHECK(c.reference_cost == doctest::Approx(cost(id)).epsilon(1e-9));
        bool infeasible_seen = false;
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            const auto& p = c.points[i];
            CAPTURE(p.target_fraction);
            CHECK(p.emission_cap == doctest::Approx((1.0 - f[i]) * c.reference_emissions).epsilon(1e-12));
            if (p.status == "infeasible") {
                infeasible_seen = true;
                CHECK_FALSE(p.cost.has_value());
                continue;
            }
            CHECK_FALSE(infeasible_seen);
            REQUIRE(p.cost.has_value());
            CHECK(*p.emissions <= p.emission_cap * (1.0 + 1e-7) + 1e-6);
            if (i > 0 && c.points[i - 1].cost) CHECK(*p.cost >= *c.points[i - 1].cost * (1.0 - 1e-7));
            if (i > 0 && c.points[i - 1].abatement_cost && p.abatement_cost)
                CHECK(*p.abatement_cost >= *c.points[i - 1].abatement_cost * (1.0 - 1e-7));
            if (p.abatement_cost) CHECK(*p.abatement_cost >= -1e-6);
        }
        CHECK_FALSE(c.points[0].abatement_cost.has_value());
    }
    CHECK_THROWS_AS(abatement_sweep(mini(), scenario_by_id("s-all"), {1.5}), DomainError);
}

TEST_CASE("a cap at the cost-optimal emissions reproduces the cost optimum") {
    for (const char* id : {"s-all", "synergies"}) {
        CAPTURE(id);
        const ScenarioOutcome& free = outcome(id, ObjectiveMode::min_cost());
        const ScenarioOutcome capped =
            run(mini(), {scenario_by_id(id), ObjectiveMode::with_cap(free.emissions.total), {}, {}, {}});
        CHECK(std::abs(capped.objective - free.objective) <= 1e-6 * std::abs(free.objective));
        REQUIRE(capped.shadow_carbon_price.has_value());
        CHECK(*capped.shadow_carbon_price >= -1e-6);
    }
}

TEST_CASE("an unreachable cap reports the minimum achievable emissions") {
    const double emin = min_emissions("s-all");
    try {
        run(mini(), {scenario_by_id("s-all"), ObjectiveMode::with_cap(0.5 * emin), {}, {}, {}});
        FAIL("expected infeasibility");
    } catch (const InfeasibleError& e) {
        CHECK(e.min_achievable_emissions() == doctest::Approx(emin).epsilon(1e-6));
    }
}

TEST_CASE("warm start from a narrower scenario matches the cold solve") {
    const ScenarioOutcome& base = outcome("t-all", ObjectiveMode::min_cost());
    RunConfig cfg{scenario_by_id("synergies"), ObjectiveMode::min_cost(), {}, {}, base.sizes};
    const ScenarioOutcome warm = run(mini(), cfg);
    const double cold = cost("synergies");
    CHECK(std::abs(warm.objective - cold) <= 1e-6 * std::abs(cold));
    REQUIRE(warm.warm_start_stages.size() == 3);
    for (const auto& s : warm.warm_start_stages) CHECK(s != "infeasible");
    CHECK(warm.warm_start_stages[2] == "optimal");
}

TEST_CASE("nodal balances close on the optimal dispatch") {
    for (const char* id : {"reference", "synergies"}) {
        CAPTURE(id);
        const ScenarioRun r = run_scenario(mini(), {scenario_by_id(id), ObjectiveMode::min_cost(), {}, {}, {}});
        const SparseProblem& p = r.model.problem;
        std::vector<double> activity(p.num_rows, 0.0), scale(p.num_rows, 1.0);
        for (int j = 0; j < p.num_cols; ++j)
            for (int k = p.col_start[j]; k < p.col_start[j + 1]; ++k) {
                activity[p.row_index[k]] += p.values[k] * r.result.primal[j];
                scale[p.row_index[k]] = std::max(scale[p.row_index[k]], std::abs(p.values[k] * r.result.primal[j]));
            }
        int balances = 0;
        double worst = 0.0;
        for (int i = 0; i < p.num_rows; ++i) {
            if (p.row_names[i].find(".balance.") == std::string::npos) continue;
            ++balances;
            worst = std::max(worst, std::abs(activity[i] - p.rhs[i]) / std::max(scale[i], std::abs(p.rhs[i])));
        }
        CHECK(balances > 0);
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("outcome cache keys on digest, scenario and mode") {
    OutcomeCache cache;
    const RunConfig cfg{scenario_by_id("t-1"), ObjectiveMode::min_cost(), {}, {}, {}};
    const ScenarioOutcome a = run_cached(mini(), cfg, cache);
    CHECK(cache.size() == 1);
    CHECK(run_cached(mini(), cfg, cache) == a);
    CHECK(cache.size() == 1);
    CHECK(cache.find(system_digest(mini()), "t-1", "min-cost").has_value());
    CHECK_FALSE(cache.find(system_digest(mini()), "t-1", "min-emissions").has_value());
    EnergySystem other = mini();
    other.carbon_price += 1.0;
    run_cached(other, cfg, cache);
    CHECK(cache.size() == 2);
}

TEST_CASE("matrix results come back in input order") {
    const std::vector<ScenarioSpec> specs{scenario_by_id("t-all"), scenario_by_id("reference"), scenario_by_id("s-1")};
    const std::vector<ObjectiveMode> modes{ObjectiveMode::min_cost(), ObjectiveMode::with_cap(1.0)};
    const auto one = run_matrix(mini(), specs, modes, 1);
    const auto two = run_matrix(mini(), specs, modes, 2);
    REQUIRE(one.size() == 6);
    REQUIRE(two.size() == 6);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CAPTURE(i);
        CHECK(one[i].scenario_id == specs[i / 2].id);
        CHECK(one[i].mode == modes[i % 2].label());
        CHECK(two[i].scenario_id == one[i].scenario_id);
        CHECK(two[i].error_kind == one[i].error_kind);
        if (i % 2 == 1) CHECK(one[i].error_kind == 4);
        if (one[i].outcome && two[i].outcome)
            CHECK(std::abs(one[i].outcome->objective - two[i].outcome->objective) <=
                  1e-9 * std::abs(one[i].outcome->objective));
    }
    CHECK(one[2].outcome->objective == doctest::Approx(cost("reference")).epsilon(1e-9));
}
