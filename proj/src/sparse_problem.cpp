#include "carrierflow/sparse_problem.hpp"

#include <algorithm>
#include <cmath>

#include "carrierflow/errors.hpp"

namespace carrierflow {

bool SparseProblem::has_integers() const {
    return std::any_of(integer.begin(), integer.end(), [](char c) { return c != 0; });
}

void SparseProblem::validate() const {
    const auto n = static_cast<std::size_t>(num_cols);
    const auto m = static_cast<std::size_t>(num_rows);
    if (col_start.size() != n + 1 || lower.size() != n || upper.size() != n || objective.size() != n ||
        integer.size() != n || col_names.size() != n)
        throw StructuralError("problem '" + name + "': column arrays disagree with num_cols");
    if (sense.size() != m || rhs.size() != m || row_names.size() != m)
        throw StructuralError("problem '" + name + "': row arrays disagree with num_rows");
    if (row_index.size() != values.size() || col_start.back() != static_cast<int>(values.size()))
        throw StructuralError("problem '" + name + "': nonzero arrays inconsistent");
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (std::isnan(values[k]) || std::isinf(values[k]))
            throw StructuralError("problem '" + name + "': non-finite matrix entry");
        if (row_index[k] < 0 || row_index[k] >= num_rows)
            throw StructuralError("problem '" + name + "': row index out of range");
    }
    for (int j = 0; j < num_cols; ++j) {
        if (std::isnan(lower[j]) || std::isnan(upper[j]) || std::isnan(objective[j]) || std::isinf(objective[j]))
            throw StructuralError("column '" + col_names[j] + "': NaN or infinite data");
        if (lower[j] > upper[j]) throw StructuralError("column '" + col_names[j] + "': lower bound above upper");
        if (integer[j] && (std::isinf(lower[j]) || std::isinf(upper[j])))
            throw StructuralError("integer column '" + col_names[j] + "' needs finite bounds");
    }
    for (int i = 0; i < num_rows; ++i)
        if (std::isnan(rhs[i]) || std::isinf(rhs[i]))
            throw StructuralError("row '" + row_names[i] + "': non-finite right-hand side");
}

RowMatrix::RowMatrix(const SparseProblem& p) : rows(p.num_rows), cols(p.num_cols) {
    row_start.assign(rows + 1, 0);
    for (int r : p.row_index) ++row_start[r + 1];
    for (int i = 0; i < rows; ++i) row_start[i + 1] += row_start[i];
    col_index.resize(p.values.size());
    values.resize(p.values.size());
    std::vector<int> next(row_start.begin(), row_start.end() - 1);
    for (int j = 0; j < cols; ++j)
        for (int k = p.col_start[j]; k < p.col_start[j + 1]; ++k) {
            const int slot = next[p.row_index[k]]++;
            col_index[slot] = j;
            values[slot] = p.values[k];
        }
}

NameRegistry::NameRegistry(const SparseProblem& p) {
    cols_.reserve(p.col_names.size());
    for (int j = 0; j < p.num_cols; ++j) cols_.emplace(p.col_names[j], j);
    rows_.reserve(p.row_names.size());
    for (int i = 0; i < p.num_rows; ++i) rows_.emplace(p.row_names[i], i);
}

int NameRegistry::column(std::string_view name) const {
    auto it = cols_.find(std::string(name));
    return it == cols_.end() ? -1 : it->second;
}

int NameRegistry::row(std::string_view name) const {
    auto it = rows_.find(std::string(name));
    return it == rows_.end() ? -1 : it->second;
}

int ProblemBuilder::add_column(std::string name, double lower, double upper, double cost,
                               bool is_integer) {
    lower_.push_back(lower);
    upper_.push_back(upper);
    costs_.push_back(cost);
    integer_.push_back(is_integer ? 1 : 0);
    col_names_.push_back(std::move(name));
    return static_cast<int>(lower_.size()) - 1;
}

int ProblemBuilder::add_row(std::string name, RowSense sense, double rhs, std::span<const Term> terms) {
    const int row = static_cast<int>(rhs_.size());
    for (const auto& [col, value] : terms) {
        if (col < 0 || col >= num_cols())
            throw StructuralError("row '" + name + "' references unknown column " + std::to_string(col));
        triplets_.push_back({row, col, value});
    }
    sense_.push_back(sense);
    rhs_.push_back(rhs);
    row_names_.push_back(std::move(name));
    return row;
}

void ProblemBuilder::set_bounds(int col, double lower, double upper) {
    lower_.at(col) = lower;
    upper_.at(col) = upper;
}

SparseProblem ProblemBuilder::build(std::string name) const {
    SparseProblem p;
    p.name = std::move(name);
    p.num_rows = num_rows();
    p.num_cols = num_cols();
    p.sense = sense_;
    p.rhs = rhs_;
    p.row_names = row_names_;
    p.lower = lower_;
    p.upper = upper_;
    p.objective = costs_;
    p.integer = integer_;
    p.col_names = col_names_;

    std::vector<Triplet> sorted = triplets_;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    p.col_start.assign(p.num_cols + 1, 0);
    p.row_index.clear();
    p.values.clear();
    std::size_t k = 0;
    for (int j = 0; j < p.num_cols; ++j) {
        while (k < sorted.size() && sorted[k].col == j) {
            const int row = sorted[k].row;
            double v = 0.0;
            while (k < sorted.size() && sorted[k].col == j && sorted[k].row == row) v += sorted[k++].value;
            if (v != 0.0) {
                p.row_index.push_back(row);
                p.values.push_back(v);
            }
        }
        p.col_start[j + 1] = static_cast<int>(p.values.size());
    }
    return p;
}

}  // namespace carrierflow
