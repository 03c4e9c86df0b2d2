#include "doctest.h"

#include <random>

#include "carrierflow/kernels.hpp"
#include "carrierflow/sparse_problem.hpp"
#include "support/random_lp.hpp"

using namespace carrierflow;
using namespace carrierflow::kernels;

namespace {

struct RatioData {
    std::vector<double> alpha, value, lower, upper;
    std::vector<int> id;
    RatioInput input(bool phase_one) const {
        RatioInput in;
        in.alpha = alpha;
        in.value = value;
        in.lower = lower;
        in.upper = upper;
        in.basic_id = id;
        in.phase_one = phase_one;
        return in;
    }
};

RatioData random_ratio(std::mt19937_64& rng, int size) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 9);
    RatioData r;
    for (int i = 0; i < size; ++i) {
        r.alpha.push_back(pick(rng) < 3 ? 0.0 : std::round(u(rng) * 8.0) / 4.0);
        const double lo = pick(rng) < 2 ? -kInf : -std::round(u(rng) * 4.0 + 4.0);
        const double hi = pick(rng) < 2 ? kInf : std::round(u(rng) * 4.0 + 4.0);
        r.lower.push_back(lo);
        r.upper.push_back(hi);
        double v = std::round(u(rng) * 8.0) / 2.0;
        if (pick(rng) < 8) v = std::clamp(v, std::isinf(lo) ? -10.0 : lo, std::isinf(hi) ? 10.0 : hi);
        r.value.push_back(v);
        r.id.push_back((i * 7919) % (size + 13));
    }
    return r;
}

}  // namespace

TEST_CASE("pricing kernels agree") {
    std::mt19937_64 rng(11);
    for (int size : {5, 300, 9000}) {
        const int m = 40;
        ProblemBuilder b;
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::uniform_int_distribution<int> row(0, m - 1);
        for (int j = 0; j < size; ++j) b.add_column("c" + std::to_string(j), 0.0, 1.0, u(rng));
        for (int i = 0; i < m; ++i) {
            std::vector<Term> t;
            for (int j = 0; j < size; ++j)
                if ((i + j) % 5 == 0) t.push_back({j, std::round(u(rng) * 4.0)});
            b.add_row("r" + std::to_string(i), RowSense::less_equal, 1.0, t);
        }
        const auto p = b.build();
        std::vector<double> cost(size + m), y(m), d1(size + m), d2(size + m);
        std::vector<MoveMask> mv(size + m);
        for (auto& c : cost) c = std::round(u(rng) * 16.0) / 8.0;
        for (auto& v : y) v = std::round(u(rng) * 16.0) / 8.0;
        for (std::size_t j = 0; j < mv.size(); ++j) mv[j] = static_cast<MoveMask>(j % 4);
        serial::price_columns(p.csc(), cost, y, mv, d1);
        omp::price_columns(p.csc(), cost, y, mv, d2);
        CHECK(d1 == d2);
        for (bool lowest : {false, true}) {
            const auto a = serial::choose_entering(d1, mv, 1e-9, lowest);
            const auto c = omp::choose_entering(d1, mv, 1e-9, lowest);
            CHECK(a.column == c.column);
            CHECK(a.reduced_cost == c.reduced_cost);
        }
        std::vector<double> x(size), act1(m), act2(m);
        for (auto& v : x) v = u(rng);
        const RowMatrix rm(p);
        serial::row_activity(rm.csr(), x, act1);
        omp::row_activity(rm.csr(), x, act2);
        CHECK(act1 == act2);
    }
}

TEST_CASE("ratio kernels agree including ties") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int size = trial % 2 ? 17 : 10000;
        const RatioData r = random_ratio(rng, size);
        for (bool ph1 : {false, true}) {
            for (double dir : {1.0, -1.0}) {
                RatioInput in = r.input(ph1);
                in.direction = dir;
                const double b1 = serial::ratio_bound(in), b2 = omp::ratio_bound(in);
                CHECK(b1 == b2);
                const auto s1 = serial::ratio_select(in, b1), s2 = omp::ratio_select(in, b2);
                CHECK(s1.position == s2.position);
                CHECK(s1.step == s2.step);
                CHECK(s1.to_upper == s2.to_upper);
                const auto t1 = serial::ratio_select_bland(in), t2 = omp::ratio_select_bland(in);
                CHECK(t1.position == t2.position);
                CHECK(t1.step == t2.step);
            }
        }
    }
}

TEST_CASE("update kernel agrees") {
    std::vector<double> a(10000), v1(10000), v2;
    for (int i = 0; i < 10000; ++i) {
        a[i] = i * 0.25 - 7.0;
        v1[i] = 1.0 / (i + 1);
    }
    v2 = v1;
    serial::update_values(v1, a, 0.375);
    omp::update_values(v2, a, 0.375);
    CHECK(v1 == v2);
}

TEST_CASE("ratio test stops an infeasible basic at its violated bound in phase one") {
    RatioData r;
    r.alpha = {-1.0};
    r.value = {-2.0};  // below lower bound 0, increases with the entering column
    r.lower = {0.0};
    r.upper = {10.0};
    r.id = {0};
    RatioInput in = r.input(true);
    const double bound = serial::ratio_bound(in);
    const auto c = serial::ratio_select(in, bound);
    CHECK(c.position == 0);
    CHECK(c.step == doctest::Approx(2.0));
    CHECK_FALSE(c.to_upper);
}
