#pragma once

#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "carrierflow/kernels.hpp"

namespace carrierflow {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { less_equal, greater_equal, equal };

/// Generic minimization problem
///     min c'x + offset  s.t.  a_i x (<=,>=,=) b_i,  l <= x <= u,  x_j integer where marked.
/// The constraint matrix is stored column-compressed.
struct SparseProblem {
    std::string name = "carrierflow";
    int num_rows = 0;
    int num_cols = 0;

    std::vector<int> col_start{0};
    std::vector<int> row_index;
    std::vector<double> values;

    std::vector<RowSense> sense;
    std::vector<double> rhs;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> objective;
    double objective_offset = 0.0;
    std::vector<char> integer;

    std::vector<std::string> col_names;
    std::vector<std::string> row_names;

    kernels::CscView csc() const {
        return {num_rows, num_cols, col_start, row_index, values};
    }

    int nonzeros() const { return static_cast<int>(values.size()); }
    bool has_integers() const;

    /// Throws StructuralError when dimensions disagree, a value is NaN, a bound
    /// pair is inverted or an integer column has an infinite bound.
    void validate() const;
};

/// Row-compressed copy of a problem's matrix, for row-wise passes.
struct RowMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> row_start;
    std::vector<int> col_index;
    std::vector<double> values;

    explicit RowMatrix(const SparseProblem& p);
    kernels::CsrView csr() const { return {rows, cols, row_start, col_index, values}; }
};

/// Name -> index lookup over a problem's registry.
class NameRegistry {
public:
    explicit NameRegistry(const SparseProblem& p);
    /// -1 when the name is unknown.
    int column(std::string_view name) const;
    int row(std::string_view name) const;

private:
    std::unordered_map<std::string, int> cols_;
    std::unordered_map<std::string, int> rows_;
};

using Term = std::pair<int, double>;

/// Incremental triplet construction of a SparseProblem.
class ProblemBuilder {
public:
    int add_column(std::string name, double lower, double upper, double cost = 0.0,
                   bool is_integer = false);
    int add_row(std::string name, RowSense sense, double rhs, std::span<const Term> terms);
    int add_row(std::string name, RowSense sense, double rhs, std::initializer_list<Term> terms) {
        return add_row(std::move(name), sense, rhs, std::span<const Term>(terms.begin(), terms.size()));
    }

    void set_cost(int col, double cost) { costs_.at(col) = cost; }
    void add_cost(int col, double cost) { costs_.at(col) += cost; }
    void set_bounds(int col, double lower, double upper);
    double lower(int col) const { return lower_.at(col); }
    double upper(int col) const { return upper_.at(col); }

    int num_cols() const { return static_cast<int>(lower_.size()); }
    int num_rows() const { return static_cast<int>(rhs_.size()); }

    /// Duplicate (row, col) entries are summed and exact zeros dropped.
    SparseProblem build(std::string name = "carrierflow") const;

private:
    struct Triplet {
        int row;
        int col;
        double value;
    };
    std::vector<Triplet> triplets_;
    std::vector<double> lower_, upper_, costs_;
    std::vector<char> integer_;
    std::vector<std::string> col_names_;
    std::vector<RowSense> sense_;
    std::vector<double> rhs_;
    std::vector<std::string> row_names_;
};

}  // namespace carrierflow
