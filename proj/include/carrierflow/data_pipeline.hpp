#pragma once

// Preparation transforms from national and regional tables to nodal model inputs.

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace carrierflow {

// ---- capacity allocation ----

/// C30_R = (P_R - C23_R) / P_N * (C30_N - C23_N) + C23_R. DomainError when P_N is zero.
double allocate_nuts_capacity(double potential_r, double cap2023_r, double potential_nat,
                              double cap2030_nat, double cap2023_nat);

struct RegionCapacity {
    std::string region;
    std::string country;
    std::string node;
    double potential = 0.0;     // MW
    double capacity_2023 = 0.0; // MW
};

/// Allocates a national 2030 target over the country's regions with P_N set to
/// the remaining national potential sum(P_R - C23_R) and C23_N = sum(C23_R), so
/// the regional results add up to the target. Returns one value per input row.
/// DataError when a region has capacity above potential or the country sits
/// below its 2023 total.
std::vector<double> allocate_country(std::span<const RegionCapacity> regions, double cap2030_nat);

/// Allocates every country in `targets` (country -> 2030 MW) and sums the
/// regions per node. Countries run in parallel. DataError for a country
/// without regions.
std::map<std::string, double> allocate_to_nodes(const std::vector<RegionCapacity>& regions,
                                                const std::map<std::string, double>& targets);

/// Columns region,country,node,potential,capacity_2023.
std::vector<RegionCapacity> read_region_capacities(const std::filesystem::path& file);

/// Columns country,capacity_2030.
std::map<std::string, double> read_national_targets(const std::filesystem::path& file);

// ---- demand ----

/// Node weights within one country.
struct NodeKeys {
    std::string node;
    double demand_key = 0.0;      // share of national annual demand
    double employment_key = 0.0;  // share of national manufacturing employment
};

/// Splits a national series into a flat industrial part allocated by
/// employment keys and a residual profile allocated by each node's share of
/// non-industrial demand. Per step the node values sum to the national value.
/// DomainError for shares or keys outside [0, 1] or key sums away from 1.
/// DataError when a node's non-industrial demand turns negative.
std::map<std::string, std::vector<double>> split_industrial_demand(std::span<const double> national,
                                                                   double industrial_share,
                                                                   std::span<const NodeKeys> keys);

/// Columns node,country,manufacturing_employees. Returns node -> share of the
/// country's total.
std::map<std::string, double> read_employment_keys(const std::filesystem::path& file);

inline constexpr double kFaultyDemandThreshold = 0.1;

/// Replaces values below the threshold by linear interpolation between the
/// nearest valid neighbours; leading and trailing runs copy the nearest valid
/// value. DataError when no value is valid.
std::vector<double> interpolate_faulty_demand(std::span<const double> series,
                                              double threshold = kFaultyDemandThreshold);

// ---- wind ----

inline constexpr double kWindReferenceHeight = 100.0;  // m
inline constexpr double kOnshoreShearExponent = 1.0 / 7.0;
inline constexpr double kOffshoreShearExponent = 0.11;

/// (target / reference)^exponent. DomainError for non-positive heights.
double height_factor(double ref_height, double target_height, double exponent);

double wind_height_correction(double ws_ref, double ref_height, double target_height, double exponent);

/// Offshore hub height by commissioning year: 80 m before 2010, 100 m up to 2020, 120 m after.
double offshore_hub_height(int commission_year);

/// Piecewise-linear turbine curve. The first breakpoint is the cut-in speed,
/// the last one the cut-out speed.
class PowerCurve {
public:
    /// DataError unless speeds strictly increase, powers are finite and
    /// non-negative and there are at least two breakpoints.
    PowerCurve(std::vector<double> speed, std::vector<double> power);

    double cut_in() const { return speed_.front(); }
    double cut_out() const { return speed_.back(); }
    double rated_power() const { return rated_; }
    /// Lowest speed reaching rated power.
    double rated_speed() const;

    const std::vector<double>& speed() const { return speed_; }
    const std::vector<double>& power() const { return power_; }

private:
    std::vector<double> speed_, power_;
    double rated_ = 0.0;
};

/// Columns wind_speed,power_mw.
PowerCurve read_power_curve(const std::filesystem::path& file);

/// MW; zero below cut-in and above cut-out.
double turbine_power_output(double ws, const PowerCurve& curve);

/// Output over rated power per step.
std::vector<double> capacity_factor_series(std::span<const double> wind_speed, const PowerCurve& curve);

// ---- flat profiles ----

/// total / steps per step; the last step takes the rounding remainder so the
/// series sums to `total`. DomainError for steps < 1 or a negative total.
std::vector<double> flat_profile(double total, int steps);

/// Constant output of `capacity` MW at a fixed capacity factor, MWh per step.
std::vector<double> capacity_factor_profile(double capacity, double capacity_factor, int steps,
                                            double hours_per_step = 1.0);

/// Each weekly total spread flat over its `steps_per_week` steps.
std::vector<double> expand_weekly_inflows(std::span<const double> weekly, int steps_per_week = 168);

}  // namespace carrierflow
