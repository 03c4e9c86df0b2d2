#include <omp.h>

#include <cmath>
#include <limits>
#include <vector>

#include "carrierflow/kernels.hpp"
#include "ratio_rules.hpp"

namespace carrierflow::kernels::omp {

namespace {

// Below this many elements the fork/join cost dominates.
constexpr int kMinParallel = 4096;

}  // namespace

void price_columns(const CscView& a, std::span<const double> cost, std::span<const double> y,
                   std::span<const MoveMask> movable, std::span<double> d) {
    const int total = a.cols + a.rows;
#pragma omp parallel for schedule(static) if (total >= kMinParallel)
    for (int j = 0; j < total; ++j) {
        if (movable[j] == kMoveNone) {
            d[j] = 0.0;
        } else if (j < a.cols) {
            double s = cost[j];
            for (int k = a.col_start[j]; k < a.col_start[j + 1]; ++k) s -= y[a.row_index[k]] * a.values[k];
            d[j] = s;
        } else {
            d[j] = cost[j] - y[j - a.cols];
        }
    }
}

EnteringChoice choose_entering(std::span<const double> d, std::span<const MoveMask> movable,
                               double tol, bool lowest_index) {
    const int n = static_cast<int>(d.size());
    EnteringChoice best;
    double best_score = 0.0;
#pragma omp parallel if (n >= kMinParallel)
    {
        EnteringChoice local;
        double local_score = 0.0;
#pragma omp for schedule(static) nowait
        for (int j = 0; j < n; ++j) {
            if (!detail::eligible(d[j], movable[j], tol)) continue;
            const double score = std::abs(d[j]);
            if (detail::better_entering(score, j, local_score, local.column, lowest_index)) {
                local.column = j;
                local.reduced_cost = d[j];
                local_score = score;
            }
        }
#pragma omp critical(carrierflow_entering)
        {
            if (local.column >= 0 &&
                detail::better_entering(local_score, local.column, best_score, best.column, lowest_index)) {
                best = local;
                best_score = local_score;
            }
        }
    }
    return best;
}

double ratio_bound(const RatioInput& in) {
    const int m = static_cast<int>(in.alpha.size());
    double bound = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : bound) if (m >= kMinParallel)
    for (int i = 0; i < m; ++i) {
        const auto s = detail::step_limit(in, i);
        if (s.valid && s.relaxed < bound) bound = s.relaxed;
    }
    return bound;
}

RatioChoice ratio_select(const RatioInput& in, double bound) {
    const int m = static_cast<int>(in.alpha.size());
    RatioChoice best;
    double best_pivot = 0.0;
#pragma omp parallel if (m >= kMinParallel)
    {
        RatioChoice local;
        double local_pivot = 0.0;
#pragma omp for schedule(static) nowait
        for (int i = 0; i < m; ++i) {
            const auto s = detail::step_limit(in, i);
            if (!s.valid || s.exact > bound) continue;
            const double pivot = std::abs(in.alpha[i]);
            if (local.position < 0 || pivot > local_pivot) {
                local = {i, s.exact, s.to_upper};
                local_pivot = pivot;
            }
        }
#pragma omp critical(carrierflow_ratio)
        {
            if (local.position >= 0 &&
                (best.position < 0 || local_pivot > best_pivot ||
                 (local_pivot == best_pivot && local.position < best.position))) {
                best = local;
                best_pivot = local_pivot;
            }
        }
    }
    return best;
}

RatioChoice ratio_select_bland(const RatioInput& in) {
    const int m = static_cast<int>(in.alpha.size());
    double min_step = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : min_step) if (m >= kMinParallel)
    for (int i = 0; i < m; ++i) {
        const auto s = detail::step_limit(in, i);
        if (s.valid && s.exact < min_step) min_step = s.exact;
    }
    RatioChoice best;
    if (std::isinf(min_step)) return best;
    const double cutoff = min_step + detail::bland_tie_tolerance(min_step);
    int best_id = -1;
#pragma omp parallel if (m >= kMinParallel)
    {
        RatioChoice local;
        int local_id = -1;
#pragma omp for schedule(static) nowait
        for (int i = 0; i < m; ++i) {
            const auto s = detail::step_limit(in, i);
            if (!s.valid || s.exact > cutoff) continue;
            if (local_id < 0 || in.basic_id[i] < local_id) {
                local = {i, s.exact, s.to_upper};
                local_id = in.basic_id[i];
            }
        }
#pragma omp critical(carrierflow_bland)
        {
            if (local_id >= 0 && (best_id < 0 || local_id < best_id)) {
                best = local;
                best_id = local_id;
            }
        }
    }
    return best;
}

void update_values(std::span<double> value, std::span<const double> alpha, double scale) {
    const int m = static_cast<int>(value.size());
#pragma omp parallel for schedule(static) if (m >= kMinParallel)
    for (int i = 0; i < m; ++i) value[i] += scale * alpha[i];
}

void row_activity(const CsrView& a, std::span<const double> x, std::span<double> activity) {
#pragma omp parallel for schedule(static) if (a.rows >= kMinParallel)
    for (int i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (int k = a.row_start[i]; k < a.row_start[i + 1]; ++k) s += a.values[k] * x[a.col_index[k]];
        activity[i] = s;
    }
}

}  // namespace carrierflow::kernels::omp
