#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "carrierflow/constraint_block.hpp"
#include "carrierflow/system.hpp"
#include "carrierflow/variable_index.hpp"

namespace carrierflow {

struct ObjectiveMode {
    enum class Kind { min_emissions, min_cost, min_cost_with_cap };
    Kind kind = Kind::min_cost;
    double cap = 0.0;  // t CO2, min_cost_with_cap only

    static ObjectiveMode min_emissions() { return {Kind::min_emissions, 0.0}; }
    static ObjectiveMode min_cost() { return {Kind::min_cost, 0.0}; }
    /// Throws DomainError for a negative or NaN cap.
    static ObjectiveMode with_cap(double cap);
    /// "min-cost", "min-emissions" or "cap=<t>".
    static ObjectiveMode parse(std::string_view text);
    std::string label() const;
    bool operator==(const ObjectiveMode&) const = default;
};

/// Capital recovery: capex r (1+r)^L / ((1+r)^L - 1), capex / L for r = 0.
/// Throws DomainError when lifetime <= 0.
double annualize(double capex, double lifetime, double discount_rate);

/// EUR charged per unit of expansion: annualized capex plus fixed opex, in
/// EUR, scaled to the modelled share of a year.
double investment_coefficient(const CostParams& cost, double weight);

/// gamma1 + gamma2 S + gamma3 d + gamma4 d S in kEUR, zero for S <= 0 and
/// clamped at zero.
double network_branch_capex(const NetworkBranch& branch, double size_mw);

/// Objective coefficients per column, one vector per cost component (EUR).
struct CostVectors {
    std::vector<double> tec;
    std::vector<double> netw;
    std::vector<double> imp;
    std::vector<double> co2;
    std::vector<double> total() const;
};

/// Emission coefficients per column (t CO2 per unit).
struct EmissionCoefficients {
    std::vector<double> tec;
    std::vector<double> imp;
    std::vector<double> total() const;
};

std::vector<double> technology_cost_terms(const EnergySystem& system, const VariableIndex& index);
std::vector<double> network_cost_terms(const EnergySystem& system, const VariableIndex& index);
/// Import prices plus the carbon price on every emitting flow.
std::vector<double> import_and_carbon_terms(const EnergySystem& system, const VariableIndex& index);
EmissionCoefficients emission_coefficients(const EnergySystem& system, const VariableIndex& index);
CostVectors cost_vectors(const EnergySystem& system, const VariableIndex& index);

struct EmissionTotals {
    double tec = 0.0;
    double imp = 0.0;
    double total = 0.0;
};
EmissionTotals total_emissions(const EnergySystem& system, const VariableIndex& index,
                               const std::vector<double>& solution);

struct CostBreakdown {
    double tec = 0.0;
    double netw = 0.0;
    double imp = 0.0;
    double co2 = 0.0;
    double total = 0.0;
};
CostBreakdown cost_decomposition(const EnergySystem& system, const VariableIndex& index,
                                 const std::vector<double>& solution);

struct Objective {
    std::vector<double> coefficients;
    std::optional<LinearRow> cap_row;  // E_tec + E_imp <= cap
};
Objective assemble_objective(const EnergySystem& system, const VariableIndex& index, const ObjectiveMode& mode);

inline constexpr const char* kEmissionCapRow = "emission_cap";

}  // namespace carrierflow
