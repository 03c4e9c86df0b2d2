#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "carrierflow/simplex.hpp"
#include "carrierflow/sparse_problem.hpp"

namespace carrierflow {

enum class MpsFormat {
    /// Strict column layout, generated 8-character names (Cnnnnnnn / Rnnnnnnn),
    /// values in 12 characters.
    fixed,
    /// Whitespace separated, registry names, full double precision.
    free,
};

void write_mps(std::ostream& out, const SparseProblem& problem, MpsFormat format = MpsFormat::fixed);
void write_mps(const std::string& path, const SparseProblem& problem, MpsFormat format = MpsFormat::fixed);

/// Reads either layout (tokens are whitespace separated). RANGES are rejected.
SparseProblem read_mps(std::istream& in);
SparseProblem read_mps_file(const std::string& path);

/// Generated fixed-format names.
std::string mps_column_name(int col);
std::string mps_row_name(int row);

/// "name value" per line, '#' comments. Names may be registry names or the
/// generated fixed-format names. Columns not listed are zero.
std::vector<double> read_solution(std::istream& in, const SparseProblem& problem);
std::vector<double> read_solution_file(const std::string& path, const SparseProblem& problem);
void write_solution(std::ostream& out, const SparseProblem& problem, const SolveResult& result);

}  // namespace carrierflow
