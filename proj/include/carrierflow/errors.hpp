#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace carrierflow {

/// Malformed or inconsistent input data (missing series, bad parameters).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was applied to an entity of the wrong shape or an unknown reference.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input file does not follow the documented schema. Carries file, row and column.
class SchemaError : public DataError {
public:
    SchemaError(std::string file, int row, std::string column, const std::string& what)
        : DataError(file + ":" + std::to_string(row) + ":" + column + ": " + what),
          file_(std::move(file)), row_(row), column_(std::move(column)) {}

    const std::string& file() const noexcept { return file_; }
    int row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::string file_;
    int row_;
    std::string column_;
};

/// A staged warm start could not find a feasible point for its first stage.
class WarmStartError : public std::runtime_error {
public:
    WarmStartError(const std::string& what, std::vector<std::string> violated_rows)
        : std::runtime_error(what), violated_rows_(std::move(violated_rows)) {}

    const std::vector<std::string>& violated_rows() const noexcept { return violated_rows_; }

private:
    std::vector<std::string> violated_rows_;
};

/// The optimization problem has no feasible point. When an emission cap caused
/// it, `min_achievable_emissions` holds the minimum-emission benchmark.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, double min_achievable_emissions)
        : std::runtime_error(what), min_achievable_(min_achievable_emissions) {}

    double min_achievable_emissions() const noexcept { return min_achievable_; }

private:
    double min_achievable_;
};

class SolverLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace carrierflow
