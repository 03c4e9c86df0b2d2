#pragma once

#include <string>
#include <vector>

#include "carrierflow/sparse_problem.hpp"

namespace carrierflow {

struct LinearRow {
    std::string name;
    RowSense sense = RowSense::less_equal;
    double rhs = 0.0;
    std::vector<Term> terms;
};

/// Upper bound imposed directly on a column instead of a row.
struct BoundTightening {
    int column = -1;
    double upper = 0.0;
};

/// Output of one emitter: rows plus column bounds.
struct ConstraintBlock {
    std::vector<LinearRow> rows;
    std::vector<BoundTightening> bounds;

    void add_row(std::string name, RowSense sense, double rhs, std::vector<Term> terms) {
        rows.push_back({std::move(name), sense, rhs, std::move(terms)});
    }
    void tighten(int column, double upper) { bounds.push_back({column, upper}); }
    void append(ConstraintBlock&& other);
    const LinearRow* find_row(const std::string& name) const;
};

}  // namespace carrierflow
