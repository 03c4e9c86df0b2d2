#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "carrierflow/errors.hpp"
#include "carrierflow/miniature.hpp"
#include "carrierflow/results_io.hpp"

using namespace carrierflow;
namespace fs = std::filesystem;

namespace {

const EnergySystem& mini() {
    static const EnergySystem s = build_miniature_system(0);
    return s;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("outcome json round trips exactly") {
    for (const char* id : {"reference", "synergies"}) {
        CAPTURE(id);
        const ScenarioOutcome o = run(mini(), {scenario_by_id(id), ObjectiveMode::min_cost(), {}, {}, {}});
        const std::string text = outcome_to_json(o);
        const ScenarioOutcome back = outcome_from_json(text);
        CHECK(back == o);
        CHECK(outcome_to_json(back) == text);
    }
    const ScenarioOutcome capped =
        run(mini(), {scenario_by_id("s-all"), ObjectiveMode::with_cap(6700.0), {}, {}, {}});
    REQUIRE(capped.shadow_carbon_price.has_value());
    CHECK(outcome_from_json(outcome_to_json(capped)) == capped);
    CHECK_THROWS_AS(outcome_from_json("{\"scenario\": 3"), DataError);
    CHECK_THROWS_AS(outcome_from_json("[]"), DataError);
}

TEST_CASE("capacities csv is header only without additions") {
    const ScenarioOutcome ref = run(mini(), {scenario_by_id("reference"), ObjectiveMode::min_cost(), {}, {}, {}});
    CHECK(capacities_csv(ref) == "group,location,new_capacity,unit\n");
    const ScenarioOutcome syn = run(mini(), {scenario_by_id("synergies"), ObjectiveMode::min_cost(), {}, {}, {}});
    CHECK(count_lines(capacities_csv(syn)) == 1 + static_cast<int>(syn.capacity_table.size()));
}

TEST_CASE("frontier csv and curve json") {
    const AbatementCurve c = abatement_sweep(mini(), scenario_by_id("s-all"), {0.01, 0.02, 0.3});
    const std::string csv = frontier_csv(c);
    CHECK(count_lines(csv) == 4);
    CHECK(csv.rfind("target_fraction,emission_cap,cost,emissions,abatement_cost,status\n", 0) == 0);
    CHECK(csv.find("0.3,") != std::string::npos);
    CHECK(csv.substr(csv.size() - 12) == ",infeasible\n");
    CHECK(curve_from_json(curve_to_json(c)) == c);
}

TEST_CASE("export writes every file and refuses unwritable targets") {
    const ScenarioOutcome o = run(mini(), {scenario_by_id("t-1"), ObjectiveMode::min_cost(), {}, {}, {}});
    const AbatementCurve c = abatement_sweep(mini(), scenario_by_id("s-all"), {0.01});
    const fs::path dir = fs::temp_directory_path() / "carrierflow_test_export";
    fs::remove_all(dir);
    export_results(o, dir, c);
    for (const char* f : {"result.json", "capacities.csv", "frontier.csv", "curve.json"}) CHECK(fs::exists(dir / f));
    CHECK(outcome_from_json(read_text_file(dir / "result.json")) == o);
    CHECK(read_text_file(dir / "frontier.csv") == frontier_csv(c));
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
    fs::remove_all(dir);
    const fs::path blocker = fs::temp_directory_path() / "carrierflow_test_blocker";
    write_text_file(blocker, "x");
    CHECK_THROWS_AS(export_results(o, blocker / "sub"), IoError);
    fs::remove(blocker);
    CHECK_THROWS_AS(read_text_file("/nonexistent/carrierflow.json"), IoError);
}
