#pragma once

// Per-element rules shared by the serial and OpenMP kernels so both evaluate
// exactly the same floating-point expressions.

#include <cmath>
#include <limits>

#include "carrierflow/kernels.hpp"

namespace carrierflow::kernels::detail {

struct StepLimit {
    bool valid = false;
    double exact = 0.0;
    double relaxed = 0.0;
    bool to_upper = false;
};

inline StepLimit step_limit(const RatioInput& in, int i) {
    const double a = in.alpha[i];
    if (!(std::abs(a) >= in.pivot_tol)) return {};
    const double rate = -in.direction * a;
    const double x = in.value[i];
    const double l = in.lower[i];
    const double u = in.upper[i];
    const double tol = in.feasibility_tol;
    StepLimit s;
    if (rate < 0.0) {
        if (in.phase_one && x > u + tol) {
            s.exact = s.relaxed = (x - u) / -rate;
            s.valid = true;
            s.to_upper = true;
            return s;
        }
        if (x < l - tol || std::isinf(l)) return {};
        s.exact = std::max(0.0, x - l) / -rate;
        s.relaxed = (x - l + tol) / -rate;
        s.to_upper = false;
    } else {
        if (in.phase_one && x < l - tol) {
            s.exact = s.relaxed = (l - x) / rate;
            s.valid = true;
            s.to_upper = false;
            return s;
        }
        if (x > u + tol || std::isinf(u)) return {};
        s.exact = std::max(0.0, u - x) / rate;
        s.relaxed = (u - x + tol) / rate;
        s.to_upper = true;
    }
    s.valid = true;
    return s;
}

inline bool eligible(double d, MoveMask mask, double tol) {
    return ((mask & kMoveUp) && d < -tol) || ((mask & kMoveDown) && d > tol);
}

/// Deterministic "better" relation for entering candidates.
inline bool better_entering(double score, int index, double best_score, int best_index,
                            bool lowest_index) {
    if (best_index < 0) return true;
    if (lowest_index) return index < best_index;
    if (score > best_score) return true;
    return score == best_score && index < best_index;
}

inline double bland_tie_tolerance(double step) { return 1e-12 * std::max(1.0, step); }

}  // namespace carrierflow::kernels::detail
