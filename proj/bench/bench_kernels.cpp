#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "carrierflow/branch_and_bound.hpp"
#include "carrierflow/miniature.hpp"
#include "carrierflow/model.hpp"

using namespace carrierflow;
using kernels::Execution;

namespace {

const Model& model168() {
    static const Model m = build_model(build_miniature_system(0, 168), scenario_by_id("synergies"),
                                       ObjectiveMode::min_cost());
    return m;
}

std::vector<double> random_vector(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

Execution execution(const benchmark::State& state) {
    return state.range(0) ? Execution::parallel : Execution::serial;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "omp" : "serial"); }

void BM_PriceColumns(benchmark::State& state) {
    const SparseProblem& p = model168().problem;
    const auto y = random_vector(p.num_rows, 1);
    std::vector<kernels::MoveMask> movable(p.num_cols + p.num_rows, kernels::kMoveBoth);
    std::vector<double> d(p.num_cols + p.num_rows);
    for (auto _ : state) {
        kernels::price_columns(execution(state), p.csc(), p.objective, y, movable, d);
        benchmark::DoNotOptimize(d.data());
    }
    label(state);
}

void BM_ChooseEntering(benchmark::State& state) {
    const auto d = random_vector(1 << 20, 2);
    std::vector<kernels::MoveMask> movable(d.size(), kernels::kMoveBoth);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::choose_entering(execution(state), d, movable, 1e-9, false));
    label(state);
}

void BM_RatioTest(benchmark::State& state) {
    const std::size_t n = 1 << 20;
    const auto alpha = random_vector(n, 3);
    std::vector<double> value(n, 0.5), lower(n, 0.0), upper(n, 1.0);
    std::vector<int> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
    const kernels::RatioInput in{alpha, value, lower, upper, id};
    for (auto _ : state) {
        const double bound = kernels::ratio_bound(execution(state), in);
        benchmark::DoNotOptimize(kernels::ratio_select(execution(state), in, bound));
    }
    label(state);
}

void BM_RowActivity(benchmark::State& state) {
    const SparseProblem& p = model168().problem;
    const RowMatrix rows(p);
    const auto x = random_vector(p.num_cols, 4);
    std::vector<double> act(p.num_rows);
    for (auto _ : state) {
        kernels::row_activity(execution(state), rows.csr(), x, act);
        benchmark::DoNotOptimize(act.data());
    }
    label(state);
}

void BM_BuildModel(benchmark::State& state) {
    const EnergySystem sys = build_miniature_system(0, 168);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            build_model(sys, scenario_by_id("synergies"), ObjectiveMode::min_cost(), execution(state)));
    label(state);
}

void BM_SolveMiniature(benchmark::State& state) {
    const Model m = build_model(build_miniature_system(0), scenario_by_id("synergies"), ObjectiveMode::min_cost());
    SolveOptions opt;
    opt.execution = execution(state);
    for (auto _ : state) benchmark::DoNotOptimize(solve(m.problem, opt));
    label(state);
}

}  // namespace

BENCHMARK(BM_PriceColumns)->Arg(0)->Arg(1);
BENCHMARK(BM_ChooseEntering)->Arg(0)->Arg(1);
BENCHMARK(BM_RatioTest)->Arg(0)->Arg(1);
BENCHMARK(BM_RowActivity)->Arg(0)->Arg(1);
BENCHMARK(BM_BuildModel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveMiniature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
