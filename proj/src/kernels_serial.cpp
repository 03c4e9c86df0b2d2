#include <cmath>
#include <limits>

#include "carrierflow/kernels.hpp"
#include "ratio_rules.hpp"

namespace carrierflow::kernels::serial {

void price_columns(const CscView& a, std::span<const double> cost, std::span<const double> y,
                   std::span<const MoveMask> movable, std::span<double> d) {
    for (int j = 0; j < a.cols; ++j) {
        if (movable[j] == kMoveNone) {
            d[j] = 0.0;
            continue;
        }
        double s = cost[j];
        for (int k = a.col_start[j]; k < a.col_start[j + 1]; ++k) s -= y[a.row_index[k]] * a.values[k];
        d[j] = s;
    }
    for (int i = 0; i < a.rows; ++i) {
        const int j = a.cols + i;
        d[j] = movable[j] == kMoveNone ? 0.0 : cost[j] - y[i];
    }
}

EnteringChoice choose_entering(std::span<const double> d, std::span<const MoveMask> movable,
                               double tol, bool lowest_index) {
    EnteringChoice best;
    double best_score = 0.0;
    const int n = static_cast<int>(d.size());
    for (int j = 0; j < n; ++j) {
        if (!detail::eligible(d[j], movable[j], tol)) continue;
        const double score = std::abs(d[j]);
        if (detail::better_entering(score, j, best_score, best.column, lowest_index)) {
            best.column = j;
            best.reduced_cost = d[j];
            best_score = score;
            if (lowest_index) break;
        }
    }
    return best;
}

double ratio_bound(const RatioInput& in) {
    double bound = std::numeric_limits<double>::infinity();
    const int m = static_cast<int>(in.alpha.size());
    for (int i = 0; i < m; ++i) {
        const auto s = detail::step_limit(in, i);
        if (s.valid && s.relaxed < bound) bound = s.relaxed;
    }
    return bound;
}

RatioChoice ratio_select(const RatioInput& in, double bound) {
    RatioChoice best;
    double best_pivot = 0.0;
    const int m = static_cast<int>(in.alpha.size());
    for (int i = 0; i < m; ++i) {
        const auto s = detail::step_limit(in, i);
        if (!s.valid || s.exact > bound) continue;
        const double pivot = std::abs(in.alpha[i]);
        if (best.position < 0 || pivot > best_pivot) {
            best = {i, s.exact, s.to_upper};
            best_pivot = pivot;
        }
    }
    return best;
}

RatioChoice ratio_select_bland(const RatioInput& in) {
    const int m = static_cast<int>(in.alpha.size());
    double min_step = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        const auto s = detail::step_limit(in, i);
        if (s.valid && s.exact < min_step) min_step = s.exact;
    }
    RatioChoice best;
    if (std::isinf(min_step)) return best;
    const double cutoff = min_step + detail::bland_tie_tolerance(min_step);
    int best_id = -1;
    for (int i = 0; i < m; ++i) {
        const auto s = detail::step_limit(in, i);
        if (!s.valid || s.exact > cutoff) continue;
        if (best_id < 0 || in.basic_id[i] < best_id) {
            best = {i, s.exact, s.to_upper};
            best_id = in.basic_id[i];
        }
    }
    return best;
}

void update_values(std::span<double> value, std::span<const double> alpha, double scale) {
    const std::size_t m = value.size();
    for (std::size_t i = 0; i < m; ++i) value[i] += scale * alpha[i];
}

void row_activity(const CsrView& a, std::span<const double> x, std::span<double> activity) {
    for (int i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (int k = a.row_start[i]; k < a.row_start[i + 1]; ++k) s += a.values[k] * x[a.col_index[k]];
        activity[i] = s;
    }
}

}  // namespace carrierflow::kernels::serial
