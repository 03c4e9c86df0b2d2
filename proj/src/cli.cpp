#include "carrierflow/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "carrierflow/errors.hpp"
#include "carrierflow/miniature.hpp"
#include "carrierflow/model.hpp"
#include "carrierflow/mps.hpp"
#include "carrierflow/results_io.hpp"
#include "carrierflow/scenario.hpp"
#include "carrierflow/system_io.hpp"

namespace carrierflow {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_num(double v) {
    if (std::isnan(v)) return "nan";
    return format_double(v);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<double> parse_targets(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_commas(s)) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size()) throw UsageError("bad target fraction '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("no target fractions given");
    return out;
}

ObjectiveMode parse_mode(const std::string& s) {
    try {
        return ObjectiveMode::parse(s);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

ScenarioSpec parse_scenario(const std::string& id) {
    try {
        return scenario_by_id(id);
    } catch (const DataError& e) {
        throw UsageError(e.what());
    }
}

int default_jobs() {
    if (const char* env = std::getenv("CARRIERFLOW_JOBS")) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    return 1;
}

class Log {
public:
    Log(std::ostream& err, const bool& quiet) : err_(err), quiet_(quiet) {}
    void operator()(const std::string& line) const {
        if (!quiet_) err_ << line << '\n';
    }

private:
    std::ostream& err_;
    const bool& quiet_;
};

void report_error(std::ostream& err, const std::string& kind, int code, const std::string& message,
                  const nlohmann::ordered_json& extra = nlohmann::ordered_json::object()) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["exit_code"] = code;
    j["message"] = message;
    for (const auto& [k, v] : extra.items()) j[k] = v;
    err << j.dump() << '\n';
}

void print_summary(std::ostream& out, const ScenarioOutcome& o) {
    out << "scenario " << o.scenario_id << '\n'
        << "mode " << o.mode << '\n'
        << "status " << o.status << '\n'
        << "objective " << fmt_num(o.objective) << '\n'
        << "emissions " << fmt_num(o.emissions.total) << '\n'
        << "cost_tec " << fmt_num(o.costs.tec) << '\n'
        << "cost_netw " << fmt_num(o.costs.netw) << '\n'
        << "cost_imp " << fmt_num(o.costs.imp) << '\n'
        << "cost_co2 " << fmt_num(o.costs.co2) << '\n';
    if (o.shadow_carbon_price) out << "shadow_carbon_price " << fmt_num(*o.shadow_carbon_price) << '\n';
    out << "new_capacities " << o.new_capacities.size() << '\n';
}

EnergySystem load(const std::string& dir, const Log& log) {
    EnergySystem s = parse_system_files(dir);
    log("loaded " + s.name + ": " + std::to_string(s.nodes.size()) + " nodes, " +
        std::to_string(s.technologies.size()) + " technologies, " + std::to_string(s.branches.size()) +
        " branches, " + std::to_string(s.horizon.step_count) + " steps");
    return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    return buf;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-carrier capacity expansion runner", "carrierflow"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "Suppress progress lines");
    const Log log(err, quiet);

    std::string dir, scenario = "reference", mode = "min-cost", warm, out_dir, targets = "0.01,0.10,0.30";
    std::string scenarios = "all", modes = "min-cost,min-emissions", mps_path;
    bool as_json = false, free_mps = false;
    int jobs = default_jobs();
    std::uint64_t seed = 0;
    int steps = 24;

    auto* validate = app.add_subcommand("validate", "Check a system directory");
    validate->add_option("dir", dir, "System directory")->required();

    auto* run_cmd = app.add_subcommand("run", "Solve one scenario");
    run_cmd->add_option("dir", dir, "System directory")->required();
    run_cmd->add_option("--scenario", scenario, "Scenario id");
    run_cmd->add_option("--mode", mode, "min-cost, min-emissions or cap=<t>");
    run_cmd->add_option("--warm-start", warm, "result.json of an earlier run");
    run_cmd->add_option("--out", out_dir, "Write result.json and capacities.csv here");
    run_cmd->add_flag("--json", as_json, "Print the full result JSON");

    auto* sweep = app.add_subcommand("sweep", "Abatement sweep over emission reduction targets");
    sweep->add_option("dir", dir, "System directory")->required();
    sweep->add_option("--scenario", scenario, "Scenario id");
    sweep->add_option("--targets", targets, "Comma-separated reduction fractions");
    sweep->add_option("--out", out_dir, "Write frontier.csv and curve.json here");

    auto* matrix = app.add_subcommand("matrix", "Solve many scenarios");
    matrix->add_option("dir", dir, "System directory")->required();
    matrix->add_option("--scenarios", scenarios, "all or a comma-separated id list");
    matrix->add_option("--modes", modes, "Comma-separated objective modes");
    matrix->add_option("--jobs", jobs, "Concurrent runs (default CARRIERFLOW_JOBS or 1)")
        ->check(CLI::PositiveNumber);
    matrix->add_option("--out", out_dir, "One result directory per run under here");

    auto* mps = app.add_subcommand("export-mps", "Write the scenario problem as MPS");
    mps->add_option("dir", dir, "System directory")->required();
    mps->add_option("--scenario", scenario, "Scenario id");
    mps->add_option("--mode", mode, "min-cost, min-emissions or cap=<t>");
    mps->add_option("--out", mps_path, "Output file (default standard output)");
    mps->add_flag("--free", free_mps, "Free format with registry names");

    auto* gen = app.add_subcommand("generate-miniature", "Write the built-in miniature system");
    gen->add_option("dir", dir, "Target directory")->required();
    gen->add_option("--seed", seed, "Demand jitter seed");
    gen->add_option("--steps", steps, "Time steps")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, "usage", kExitUsage, e.what());
        return kExitUsage;
    }

    try {
        if (validate->parsed()) {
            const EnergySystem s = read_system_files(dir);
            const auto violations = validate_system(s);
            out << violations.size() << " violations\n";
            for (const auto& v : violations) out << v.message() << '\n';
            return violations.empty() ? kExitOk : kExitValidation;
        }

        if (gen->parsed()) {
            const EnergySystem s = build_miniature_system(seed, steps);
            write_system_files(s, dir);
            out << "wrote " << s.name << " to " << dir << " digest " << system_digest(s) << '\n';
            return kExitOk;
        }

        if (run_cmd->parsed()) {
            RunConfig cfg;
            cfg.scenario = parse_scenario(scenario);
            cfg.mode = parse_mode(mode);
            if (!warm.empty()) cfg.warm_start = outcome_from_json(read_text_file(warm)).sizes;
            const EnergySystem s = load(dir, log);
            const auto t0 = std::chrono::steady_clock::now();
            const ScenarioOutcome o = run(s, cfg);
            log("solved " + o.scenario_id + " " + o.mode + " in " + fmt_seconds(seconds_since(t0)));
            if (!out_dir.empty()) export_results(o, out_dir);
            if (as_json)
                out << outcome_to_json(o);
            else
                print_summary(out, o);
            return kExitOk;
        }

        if (sweep->parsed()) {
            const ScenarioSpec spec = parse_scenario(scenario);
            const std::vector<double> fractions = parse_targets(targets);
            const EnergySystem s = load(dir, log);
            const auto t0 = std::chrono::steady_clock::now();
            const AbatementCurve curve = abatement_sweep(s, spec, fractions);
            log("swept " + spec.id + " over " + std::to_string(fractions.size()) + " targets in " +
                fmt_seconds(seconds_since(t0)));
            const std::string csv = frontier_csv(curve);
            if (!out_dir.empty()) {
                fs::create_directories(out_dir);
                write_text_file(fs::path(out_dir) / "frontier.csv", csv);
                write_text_file(fs::path(out_dir) / "curve.json", curve_to_json(curve));
            }
            out << csv;
            return kExitOk;
        }

        if (matrix->parsed()) {
            std::vector<ScenarioSpec> specs;
            const auto ids = scenarios == "all" ? scenario_ids() : split_commas(scenarios);
            for (const auto& id : ids) specs.push_back(parse_scenario(id));
            std::vector<ObjectiveMode> mode_list;
            for (const auto& m : split_commas(modes)) mode_list.push_back(parse_mode(m));
            if (specs.empty() || mode_list.empty()) throw UsageError("empty scenario or mode list");
            const EnergySystem s = load(dir, log);
            const auto t0 = std::chrono::steady_clock::now();
            const auto entries = run_matrix(s, specs, mode_list, jobs);
            log("matrix of " + std::to_string(entries.size()) + " runs on " + std::to_string(jobs) +
                " jobs in " + fmt_seconds(seconds_since(t0)));
            out << "scenario,mode,status,objective,emissions,error\n";
            int code = kExitOk;
            for (const auto& e : entries) {
                if (e.outcome) {
                    out << e.scenario_id << ',' << e.mode << ',' << e.outcome->status << ','
                        << fmt_num(e.outcome->objective) << ',' << fmt_num(e.outcome->emissions.total) << ",\n";
                    if (!out_dir.empty()) {
                        std::string sub = e.scenario_id + "_" + e.mode;
                        std::replace(sub.begin(), sub.end(), '=', '-');
                        export_results(*e.outcome, fs::path(out_dir) / sub);
                    }
                } else {
                    std::string msg = e.error;
                    std::replace(msg.begin(), msg.end(), ',', ';');
                    std::replace(msg.begin(), msg.end(), '\n', ' ');
                    out << e.scenario_id << ',' << e.mode << ",error,,," << msg << '\n';
                    if (code == kExitOk) code = e.error_kind;
                }
            }
            return code;
        }

        if (mps->parsed()) {
            const ScenarioSpec spec = parse_scenario(scenario);
            const ObjectiveMode m = parse_mode(mode);
            const EnergySystem s = load(dir, log);
            const Model model = build_model(s, spec, m);
            const MpsFormat format = free_mps ? MpsFormat::free : MpsFormat::fixed;
            if (mps_path.empty()) {
                write_mps(out, model.problem, format);
            } else {
                write_mps(mps_path, model.problem, format);
                log("wrote " + mps_path + ": " + std::to_string(model.problem.num_cols) + " columns, " +
                    std::to_string(model.problem.num_rows) + " rows");
            }
            return kExitOk;
        }
    } catch (const UsageError& e) {
        report_error(err, "usage", kExitUsage, e.what());
        return kExitUsage;
    } catch (const InfeasibleError& e) {
        nlohmann::ordered_json extra = nlohmann::ordered_json::object();
        const double m = e.min_achievable_emissions();
        extra["min_achievable_emissions"] = std::isnan(m) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(m);
        report_error(err, "infeasible", kExitInfeasible, e.what(), extra);
        return kExitInfeasible;
    } catch (const SolverLimitError& e) {
        report_error(err, "solver_limit", kExitSolverLimit, e.what());
        return kExitSolverLimit;
    } catch (const WarmStartError& e) {
        nlohmann::ordered_json extra = nlohmann::ordered_json::object();
        extra["violated_rows"] = e.violated_rows();
        report_error(err, "warm_start", kExitSolverLimit, e.what(), extra);
        return kExitSolverLimit;
    } catch (const IoError& e) {
        report_error(err, "io", kExitIo, e.what());
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        report_error(err, "io", kExitIo, e.what());
        return kExitIo;
    } catch (const DataError& e) {
        report_error(err, "validation", kExitValidation, e.what());
        return kExitValidation;
    } catch (const DomainError& e) {
        report_error(err, "validation", kExitValidation, e.what());
        return kExitValidation;
    } catch (const StructuralError& e) {
        report_error(err, "validation", kExitValidation, e.what());
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace carrierflow
