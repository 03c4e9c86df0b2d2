#pragma once

// Data-parallel inner loops of the simplex and of solution verification.
//
// Every kernel exists twice: a plain serial loop (the reference, kept for
// testing) and an OpenMP version. Both produce bit-identical results: the
// per-element arithmetic is the same and every reduction resolves ties by the
// lowest index, so thread count never changes a pivot choice.

#include <cstdint>
#include <span>

namespace carrierflow::kernels {

enum class Execution { serial, parallel };

/// Read-only view of a column-compressed matrix.
struct CscView {
    int rows = 0;
    int cols = 0;
    std::span<const int> col_start;  // size cols + 1
    std::span<const int> row_index;
    std::span<const double> values;
};

/// Read-only view of a row-compressed matrix.
struct CsrView {
    int rows = 0;
    int cols = 0;
    std::span<const int> row_start;  // size rows + 1
    std::span<const int> col_index;
    std::span<const double> values;
};

/// Direction a nonbasic column may move in: bit 0 = up, bit 1 = down.
using MoveMask = std::uint8_t;
inline constexpr MoveMask kMoveNone = 0;
inline constexpr MoveMask kMoveUp = 1;
inline constexpr MoveMask kMoveDown = 2;
inline constexpr MoveMask kMoveBoth = 3;

struct EnteringChoice {
    int column = -1;
    double reduced_cost = 0.0;
};

/// Basic variable data handed to the ratio test.
struct RatioInput {
    std::span<const double> alpha;  // B^-1 a_q
    std::span<const double> value;  // current basic values
    std::span<const double> lower;
    std::span<const double> upper;
    std::span<const int> basic_id;  // variable index per basis position
    double direction = 1.0;         // +1 when the entering variable increases
    double feasibility_tol = 1e-9;
    double pivot_tol = 1e-9;
    bool phase_one = false;
};

struct RatioChoice {
    int position = -1;          // -1: no basic variable limits the step
    double step = 0.0;
    bool to_upper = false;      // leaving variable ends at its upper bound
};

namespace serial {

/// d[j] = cost[j] - y . a_j for structural columns; columns cols..cols+rows-1
/// are the row slacks with unit coefficient.
void price_columns(const CscView& a, std::span<const double> cost, std::span<const double> y,
                   std::span<const MoveMask> movable, std::span<double> d);

EnteringChoice choose_entering(std::span<const double> d, std::span<const MoveMask> movable,
                               double tol, bool lowest_index);

/// Harris pass 1: smallest step over bounds relaxed by the feasibility tolerance.
double ratio_bound(const RatioInput& in);

/// Harris pass 2: among positions whose exact step does not exceed `bound`,
/// the one with the largest |alpha|.
RatioChoice ratio_select(const RatioInput& in, double bound);

/// Textbook ratio test; ties go to the lowest variable index (Bland).
RatioChoice ratio_select_bland(const RatioInput& in);

/// value[i] += scale * alpha[i]
void update_values(std::span<double> value, std::span<const double> alpha, double scale);

/// activity[i] = sum_j a_ij x_j
void row_activity(const CsrView& a, std::span<const double> x, std::span<double> activity);

}  // namespace serial

namespace omp {

void price_columns(const CscView& a, std::span<const double> cost, std::span<const double> y,
                   std::span<const MoveMask> movable, std::span<double> d);
EnteringChoice choose_entering(std::span<const double> d, std::span<const MoveMask> movable,
                               double tol, bool lowest_index);
double ratio_bound(const RatioInput& in);
RatioChoice ratio_select(const RatioInput& in, double bound);
RatioChoice ratio_select_bland(const RatioInput& in);
void update_values(std::span<double> value, std::span<const double> alpha, double scale);
void row_activity(const CsrView& a, std::span<const double> x, std::span<double> activity);

}  // namespace omp

// Dispatchers.

inline void price_columns(Execution e, const CscView& a, std::span<const double> cost,
                          std::span<const double> y, std::span<const MoveMask> movable,
                          std::span<double> d) {
    e == Execution::parallel ? omp::price_columns(a, cost, y, movable, d)
                             : serial::price_columns(a, cost, y, movable, d);
}

inline EnteringChoice choose_entering(Execution e, std::span<const double> d,
                                      std::span<const MoveMask> movable, double tol,
                                      bool lowest_index) {
    return e == Execution::parallel ? omp::choose_entering(d, movable, tol, lowest_index)
                                    : serial::choose_entering(d, movable, tol, lowest_index);
}

inline double ratio_bound(Execution e, const RatioInput& in) {
    return e == Execution::parallel ? omp::ratio_bound(in) : serial::ratio_bound(in);
}

inline RatioChoice ratio_select(Execution e, const RatioInput& in, double bound) {
    return e == Execution::parallel ? omp::ratio_select(in, bound) : serial::ratio_select(in, bound);
}

inline RatioChoice ratio_select_bland(Execution e, const RatioInput& in) {
    return e == Execution::parallel ? omp::ratio_select_bland(in) : serial::ratio_select_bland(in);
}

inline void update_values(Execution e, std::span<double> value, std::span<const double> alpha,
                          double scale) {
    e == Execution::parallel ? omp::update_values(value, alpha, scale)
                             : serial::update_values(value, alpha, scale);
}

inline void row_activity(Execution e, const CsrView& a, std::span<const double> x,
                         std::span<double> activity) {
    e == Execution::parallel ? omp::row_activity(a, x, activity)
                             : serial::row_activity(a, x, activity);
}

}  // namespace carrierflow::kernels
