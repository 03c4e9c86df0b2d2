#pragma once

#include <random>
#include <string>

#include "carrierflow/sparse_problem.hpp"

namespace oracle {

/// Random box-bounded problem with small integer data. Most instances are
/// feasible by construction around an interior point; roughly one in eight has
/// an unrelated right-hand side and may be infeasible.
inline carrierflow::SparseProblem random_lp(std::mt19937_64& rng, int max_vars = 8, int max_rows = 8,
                                            int integer_cols = 0, int max_blocks = 4) {
    using carrierflow::RowSense;
    std::uniform_int_distribution<int> nv(1, max_vars), nr(1, max_rows), coef(-5, 5), pct(0, 99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = std::max(nv(rng), integer_cols);
    const int m = nr(rng);
    carrierflow::ProblemBuilder b;
    std::vector<double> x0(n);
    for (int j = 0; j < n; ++j) {
        const bool is_int = j < integer_cols;
        const double lo = is_int ? 0.0 : -static_cast<double>(std::uniform_int_distribution<int>(0, 3)(rng));
        const double hi = is_int ? static_cast<double>(std::uniform_int_distribution<int>(1, max_blocks)(rng))
                                 : static_cast<double>(std::uniform_int_distribution<int>(1, 6)(rng));
        b.add_column("x" + std::to_string(j), lo, hi, static_cast<double>(coef(rng)), is_int);
        x0[j] = lo + (hi - lo) * unit(rng);
    }
    const bool wild = pct(rng) < 12;
    for (int i = 0; i < m; ++i) {
        std::vector<carrierflow::Term> terms;
        double act = 0.0;
        for (int j = 0; j < n; ++j) {
            if (pct(rng) < 40) continue;
            const double a = coef(rng);
            if (a == 0.0) continue;
            terms.push_back({j, a});
            act += a * x0[j];
        }
        const int kind = pct(rng);
        RowSense s = kind < 45 ? RowSense::less_equal : kind < 85 ? RowSense::greater_equal : RowSense::equal;
        double rhs = 0.0;
        if (wild) rhs = coef(rng) * 3.0;
        else if (s == RowSense::less_equal) rhs = std::round(act + 3.0 * unit(rng));
        else if (s == RowSense::greater_equal) rhs = std::round(act - 3.0 * unit(rng));
        else rhs = act;
        if (s == RowSense::equal && !wild) {
            // keep equalities integral-friendly but exactly satisfied by x0
            rhs = act;
        }
        b.add_row("r" + std::to_string(i), s, rhs, terms);
    }
    return b.build("random");
}

}  // namespace oracle
