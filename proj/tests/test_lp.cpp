#include "doctest.h"

#include <random>
#include <sstream>

#include "carrierflow/branch_and_bound.hpp"
#include "carrierflow/mps.hpp"
#include "carrierflow/simplex.hpp"
#include "carrierflow/verify.hpp"
#include "support/random_lp.hpp"
#include "support/vertex_oracle.hpp"

using namespace carrierflow;

namespace {

SolveOptions with(kernels::Execution e) {
    SolveOptions o;
    o.execution = e;
    return o;
}

}  // namespace

TEST_CASE("random LPs agree with vertex enumeration") {
    std::mt19937_64 rng(20240611);
    int feasible = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const SparseProblem p = oracle::random_lp(rng);
        const auto expected = oracle::solve_by_vertices(oracle::densify(p));
        const SolveResult r = solve_lp(p);
        CAPTURE(trial);
        if (!expected) {
            CHECK(r.status == SolveStatus::infeasible);
            continue;
        }
        ++feasible;
        REQUIRE(r.status == SolveStatus::optimal);
        CHECK(std::abs(r.objective - *expected) <= 1e-8 * std::max(1.0, std::abs(*expected)));
        const auto rep = verify_solution(p, r);
        CHECK(rep.ok());
    }
    CHECK(feasible > 150);
}

TEST_CASE("serial and parallel kernels give identical solves") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const SparseProblem p = oracle::random_lp(rng);
        const auto a = solve_lp(p, with(kernels::Execution::serial));
        const auto b = solve_lp(p, with(kernels::Execution::parallel));
        CHECK(a.status == b.status);
        CHECK(a.iterations == b.iterations);
        CHECK(a.objective == b.objective);
        CHECK(a.primal == b.primal);
    }
}

TEST_CASE("unbounded LP is reported") {
    ProblemBuilder b;
    const int x = b.add_column("x", 0.0, kInf, -1.0);
    const int y = b.add_column("y", 0.0, kInf, 0.0);
    b.add_row("r", RowSense::less_equal, 1.0, {{x, 1.0}, {y, -1.0}});
    CHECK(solve_lp(b.build()).status == SolveStatus::unbounded);
}

TEST_CASE("duals are objective sensitivities to the right-hand side") {
    // min -x - 2y  s.t. x + y <= 4, y <= 3 (row), x,y >= 0
    ProblemBuilder b;
    const int x = b.add_column("x", 0.0, kInf, -1.0);
    const int y = b.add_column("y", 0.0, kInf, -2.0);
    b.add_row("cap", RowSense::less_equal, 4.0, {{x, 1.0}, {y, 1.0}});
    b.add_row("ylim", RowSense::less_equal, 3.0, {{y, 1.0}});
    const auto p = b.build();
    const auto r = solve_lp(p);
    REQUIRE(r.optimal());
    CHECK(r.objective == doctest::Approx(-7.0));
    CHECK(r.duals[0] == doctest::Approx(-1.0));
    CHECK(r.duals[1] == doctest::Approx(-1.0));
    auto q = p;
    q.rhs[0] += 1e-3;
    CHECK((solve_lp(q).objective - r.objective) / 1e-3 == doctest::Approx(r.duals[0]));
}

TEST_CASE("warm start from an optimal basis needs no pivots") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const SparseProblem p = oracle::random_lp(rng);
        const auto r = solve_lp(p);
        if (!r.optimal()) continue;
        SolveOptions o;
        o.start_basis = r.basis;
        const auto w = solve_lp(p, o);
        REQUIRE(w.optimal());
        CHECK(w.iterations == 0);
        CHECK(std::abs(w.objective - r.objective) <= 1e-9 * std::max(1.0, std::abs(r.objective)));
    }
}

TEST_CASE("small MILPs agree with exhaustive enumeration") {
    std::mt19937_64 rng(31337);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int ints = 1 + trial % 2;
        const SparseProblem p = oracle::random_lp(rng, 6, 6, ints, 4);
        const auto expected = oracle::solve_by_enumeration(oracle::densify(p));
        const auto r = solve(p);
        CAPTURE(trial);
        if (!expected) {
            CHECK(r.status == SolveStatus::infeasible);
            continue;
        }
        ++checked;
        REQUIRE(r.status == SolveStatus::optimal);
        CHECK(std::abs(r.objective - *expected) <= 1e-8 * std::max(1.0, std::abs(*expected)));
        CHECK(verify_solution(p, r).ok());
    }
    CHECK(checked > 80);
}

TEST_CASE("a block variable with fractional relaxation is rounded by branching") {
    // LP optimum at 1.4 blocks of 10 MW; the integer optimum is found by enumeration.
    ProblemBuilder b;
    const int n = b.add_column("blocks", 0.0, 5.0, 30.0, true);
    const int f = b.add_column("flow", 0.0, 100.0, 0.0);
    const int g = b.add_column("local", 0.0, 100.0, 5.0);
    b.add_row("cap", RowSense::less_equal, 0.0, {{f, 1.0}, {n, -10.0}});
    b.add_row("demand", RowSense::equal, 14.0, {{f, 1.0}, {g, 1.0}});
    const auto p = b.build();
    const auto relax = solve_lp(p);
    REQUIRE(relax.optimal());
    CHECK(relax.primal[n] == doctest::Approx(1.4));
    const auto r = solve(p);
    REQUIRE(r.optimal());
    const auto expected = oracle::solve_by_enumeration(oracle::densify(p));
    REQUIRE(expected);
    CHECK(r.objective == doctest::Approx(*expected));
    CHECK(r.primal[n] == doctest::Approx(std::round(r.primal[n])));
}

TEST_CASE("MPS round trip preserves the problem") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        SparseProblem p = oracle::random_lp(rng, 8, 8, trial % 3, 4);
        p.objective_offset = trial * 0.5;
        for (MpsFormat fmt : {MpsFormat::fixed, MpsFormat::free}) {
            std::stringstream ss;
            write_mps(ss, p, fmt);
            const SparseProblem q = read_mps(ss);
            REQUIRE(q.num_cols == p.num_cols);
            REQUIRE(q.num_rows == p.num_rows);
            CHECK(q.integer == p.integer);
            CHECK(q.lower == p.lower);
            CHECK(q.upper == p.upper);
            CHECK(q.sense == p.sense);
            CHECK(q.values == p.values);
            CHECK(q.objective_offset == p.objective_offset);
            const double tol = fmt == MpsFormat::fixed ? 1e-9 : 0.0;
            for (int i = 0; i < p.num_rows; ++i)
                CHECK(std::abs(q.rhs[i] - p.rhs[i]) <= tol * std::max(1.0, std::abs(p.rhs[i])));
            const auto a = solve(p), c = solve(q);
            CHECK(a.status == c.status);
            if (a.optimal()) CHECK(a.objective == doctest::Approx(c.objective));
        }
    }
}

TEST_CASE("fixed MPS lines respect field columns") {
    ProblemBuilder b;
    const int x = b.add_column("a_very_long_column_name", 0.0, 2.0, -1.23456789012345);
    b.add_row("a_long_row_name", RowSense::less_equal, 1.5, {{x, 1.0}});
    std::stringstream ss;
    write_mps(ss, b.build(), MpsFormat::fixed);
    std::string line;
    bool seen = false;
    while (std::getline(ss, line)) {
        CHECK(line.size() <= 61);
        if (line.rfind("    C0000001  COST", 0) == 0) {
            seen = true;
            CHECK(line.substr(24).size() <= 12);
        }
    }
    CHECK(seen);
}

TEST_CASE("solution files accept original and generated names") {
    ProblemBuilder b;
    b.add_column("x", 0.0, 5.0, 1.0);
    b.add_column("y", 0.0, 5.0, 1.0);
    const auto p = b.build();
    std::stringstream ss("# comment\nx 1.5\nC0000002 2.25\n");
    const auto v = read_solution(ss, p);
    CHECK(v[0] == 1.5);
    CHECK(v[1] == 2.25);
    std::stringstream bad("z 1\n");
    CHECK_THROWS(read_solution(bad, p));
}
