#include "carrierflow/data_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <tuple>

#include "carrierflow/errors.hpp"
#include "csv_table.hpp"

namespace carrierflow {

namespace fs = std::filesystem;

double allocate_nuts_capacity(double potential_r, double cap2023_r, double potential_nat,
                              double cap2030_nat, double cap2023_nat) {
    if (potential_nat == 0.0) throw DomainError("capacity allocation: national potential is zero");
    return (potential_r - cap2023_r) / potential_nat * (cap2030_nat - cap2023_nat) + cap2023_r;
}

std::vector<double> allocate_country(std::span<const RegionCapacity> regions, double cap2030_nat) {
    double room = 0.0, c23 = 0.0;
    for (const auto& r : regions) {
        if (!(r.capacity_2023 >= 0.0) || !(r.potential >= r.capacity_2023))
            throw DataError("region " + r.region + ": need potential >= capacity_2023 >= 0");
        room += r.potential - r.capacity_2023;
        c23 += r.capacity_2023;
    }
    const double growth = cap2030_nat - c23;
    const std::string country = regions.empty() ? std::string() : regions.front().country;
    if (growth < -1e-9 * std::max(1.0, c23))
        throw DataError("country " + country + ": 2030 target below installed 2023 capacity");
    if (growth > room * (1.0 + 1e-12) + 1e-9)
        throw DataError("country " + country + ": 2030 target exceeds the remaining potential");

    std::vector<double> out;
    out.reserve(regions.size());
    for (const auto& r : regions) {
        if (room == 0.0)
            out.push_back(r.capacity_2023);
        else
            out.push_back(allocate_nuts_capacity(r.potential, r.capacity_2023, room, cap2030_nat, c23));
    }
    return out;
}

std::map<std::string, double> allocate_to_nodes(const std::vector<RegionCapacity>& regions,
                                                const std::map<std::string, double>& targets) {
    std::vector<std::pair<std::string, double>> countries(targets.begin(), targets.end());
    std::vector<std::vector<RegionCapacity>> groups(countries.size());
    for (std::size_t c = 0; c < countries.size(); ++c)
        for (const auto& r : regions)
            if (r.country == countries[c].first) groups[c].push_back(r);

    std::vector<std::vector<double>> results(countries.size());
    std::vector<std::exception_ptr> errors(countries.size());
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < static_cast<int>(countries.size()); ++c) {
        try {
            if (groups[c].empty()) throw DataError("country " + countries[c].first + " has no regions");
            results[c] = allocate_country(groups[c], countries[c].second);
        } catch (...) {
            errors[c] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::map<std::string, double> by_node;
    for (std::size_t c = 0; c < countries.size(); ++c)
        for (std::size_t i = 0; i < groups[c].size(); ++i) by_node[groups[c][i].node] += results[c][i];
    return by_node;
}

std::vector<RegionCapacity> read_region_capacities(const fs::path& file) {
    const csv::Table t = csv::read_table(file.parent_path(), file.filename().string());
    csv::require_columns(t, {"region", "country", "node", "potential", "capacity_2023"});
    std::vector<RegionCapacity> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        csv::RowReader row(t, r);
        RegionCapacity rc;
        rc.region = row.text("region");
        rc.country = row.text("country");
        rc.node = row.text("node");
        rc.potential = row.number("potential");
        rc.capacity_2023 = row.number("capacity_2023");
        if (rc.capacity_2023 < 0.0) row.fail("capacity_2023", "negative capacity");
        if (rc.potential < rc.capacity_2023) row.fail("potential", "potential below installed capacity");
        out.push_back(std::move(rc));
    }
    return out;
}

std::map<std::string, double> read_national_targets(const fs::path& file) {
    const csv::Table t = csv::read_table(file.parent_path(), file.filename().string());
    csv::require_columns(t, {"country", "capacity_2030"});
    std::map<std::string, double> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        csv::RowReader row(t, r);
        if (!out.emplace(row.text("country"), row.number("capacity_2030")).second)
            row.fail("country", "duplicate country");
    }
    return out;
}

namespace {

void require_unit(double v, const std::string& what) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError(what + " outside [0, 1]");
}

}  // namespace

std::map<std::string, std::vector<double>> split_industrial_demand(std::span<const double> national,
                                                                   double industrial_share,
                                                                   std::span<const NodeKeys> keys) {
    require_unit(industrial_share, "industrial share");
    double ksum = 0.0, esum = 0.0;
    for (const auto& k : keys) {
        require_unit(k.demand_key, "demand key of " + k.node);
        require_unit(k.employment_key, "employment key of " + k.node);
        ksum += k.demand_key;
        esum += k.employment_key;
    }
    if (std::abs(ksum - 1.0) > 1e-9) throw DomainError("demand keys do not sum to 1");
    if (std::abs(esum - 1.0) > 1e-9) throw DomainError("employment keys do not sum to 1");
    if (national.empty()) throw DataError("empty national demand series");

    double total = 0.0;
    for (double v : national) total += v;
    const double mean = total / static_cast<double>(national.size());
    const double s = industrial_share;

    std::map<std::string, std::vector<double>> out;
    for (const auto& k : keys) {
        const double flat = k.employment_key * s * mean;
        double w = k.demand_key;
        if (s < 1.0) {
            const double other = k.demand_key - k.employment_key * s;
            if (other < -1e-12) throw DataError("node " + k.node + ": negative non-industrial demand");
            w = std::max(0.0, other) / (1.0 - s);
        }
        std::vector<double> series(national.size());
        for (std::size_t t = 0; t < national.size(); ++t) {
            series[t] = flat + w * (national[t] - s * mean);
            if (series[t] < -1e-9 * std::max(1.0, std::abs(national[t])))
                throw DataError("node " + k.node + ": negative demand at step " + std::to_string(t));
        }
        out.emplace(k.node, std::move(series));
    }
    return out;
}

std::map<std::string, double> read_employment_keys(const fs::path& file) {
    const csv::Table t = csv::read_table(file.parent_path(), file.filename().string());
    csv::require_columns(t, {"node", "country", "manufacturing_employees"});
    std::map<std::string, double> country_total;
    std::vector<std::tuple<std::string, std::string, double>> rows;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        csv::RowReader row(t, r);
        const double n = row.number("manufacturing_employees");
        if (n < 0.0) row.fail("manufacturing_employees", "negative count");
        rows.emplace_back(row.text("node"), row.text("country"), n);
        country_total[row.text("country")] += n;
    }
    std::map<std::string, double> out;
    for (const auto& [node, country, n] : rows) {
        const double tot = country_total[country];
        if (tot <= 0.0) throw DataError("country " + country + " has no manufacturing employees");
        out[node] += n / tot;
    }
    return out;
}

std::vector<double> interpolate_faulty_demand(std::span<const double> series, double threshold) {
    std::vector<double> out(series.begin(), series.end());
    const int n = static_cast<int>(out.size());
    auto valid = [&](int i) { return series[i] >= threshold; };
    int prev = -1;
    for (int i = 0; i < n; ++i) {
        if (valid(i)) {
            prev = i;
            continue;
        }
        int next = i + 1;
        while (next < n && !valid(next)) ++next;
        if (prev < 0 && next >= n) throw DataError("demand series has no valid value");
        for (int j = i; j < next; ++j) {
            if (prev < 0)
                out[j] = series[next];
            else if (next >= n)
                out[j] = series[prev];
            else
                out[j] = series[prev] + (series[next] - series[prev]) * (j - prev) / double(next - prev);
        }
        i = next - 1;
    }
    return out;
}

double height_factor(double ref_height, double target_height, double exponent) {
    if (!(ref_height > 0.0) || !(target_height > 0.0)) throw DomainError("heights must be positive");
    return std::pow(target_height / ref_height, exponent);
}

double wind_height_correction(double ws_ref, double ref_height, double target_height, double exponent) {
    return ws_ref * height_factor(ref_height, target_height, exponent);
}

double offshore_hub_height(int commission_year) {
    if (commission_year < 2010) return 80.0;
    if (commission_year <= 2020) return 100.0;
    return 120.0;
}

PowerCurve::PowerCurve(std::vector<double> speed, std::vector<double> power)
    : speed_(std::move(speed)), power_(std::move(power)) {
    if (speed_.size() != power_.size()) throw DataError("power curve: speed and power lengths differ");
    if (speed_.size() < 2) throw DataError("power curve needs at least two breakpoints");
    for (std::size_t i = 0; i < speed_.size(); ++i) {
        if (!std::isfinite(speed_[i]) || speed_[i] < 0.0) throw DataError("power curve: bad wind speed");
        if (!std::isfinite(power_[i]) || power_[i] < 0.0) throw DataError("power curve: bad power");
        if (i > 0 && !(speed_[i] > speed_[i - 1])) throw DataError("power curve: breakpoints not increasing");
        rated_ = std::max(rated_, power_[i]);
    }
}

double PowerCurve::rated_speed() const {
    for (std::size_t i = 0; i < speed_.size(); ++i)
        if (power_[i] == rated_) return speed_[i];
    return speed_.back();
}

PowerCurve read_power_curve(const fs::path& file) {
    const csv::Table t = csv::read_table(file.parent_path(), file.filename().string());
    csv::require_columns(t, {"wind_speed", "power_mw"});
    std::vector<double> ws, p;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        csv::RowReader row(t, r);
        ws.push_back(row.number("wind_speed"));
        p.push_back(row.number("power_mw"));
        if (r > 0 && !(ws[r] > ws[r - 1])) row.fail("wind_speed", "breakpoints not increasing");
    }
    return PowerCurve(std::move(ws), std::move(p));
}

double turbine_power_output(double ws, const PowerCurve& curve) {
    const auto& s = curve.speed();
    const auto& p = curve.power();
    if (!(ws >= s.front()) || ws > s.back()) return 0.0;
    const auto it = std::upper_bound(s.begin(), s.end(), ws);
    if (it == s.end()) return p.back();
    const std::size_t hi = static_cast<std::size_t>(it - s.begin());
    const std::size_t lo = hi - 1;
    return p[lo] + (p[hi] - p[lo]) * (ws - s[lo]) / (s[hi] - s[lo]);
}

std::vector<double> capacity_factor_series(std::span<const double> wind_speed, const PowerCurve& curve) {
    std::vector<double> out(wind_speed.size(), 0.0);
    if (curve.rated_power() <= 0.0) return out;
    for (std::size_t t = 0; t < wind_speed.size(); ++t)
        out[t] = turbine_power_output(wind_speed[t], curve) / curve.rated_power();
    return out;
}

std::vector<double> flat_profile(double total, int steps) {
    if (steps < 1) throw DomainError("flat profile needs at least one step");
    if (!(total >= 0.0) || !std::isfinite(total)) throw DomainError("flat profile total must be finite and >= 0");
    std::vector<double> out(steps, total / steps);
    double head = 0.0;
    for (int t = 0; t + 1 < steps; ++t) head += out[t];
    out.back() = total - head;
    return out;
}

std::vector<double> capacity_factor_profile(double capacity, double capacity_factor, int steps,
                                            double hours_per_step) {
    return flat_profile(capacity * capacity_factor * hours_per_step * steps, steps);
}

std::vector<double> expand_weekly_inflows(std::span<const double> weekly, int steps_per_week) {
    if (steps_per_week < 1) throw DomainError("steps per week must be positive");
    std::vector<double> out;
    out.reserve(weekly.size() * steps_per_week);
    for (double w : weekly) {
        const auto week = flat_profile(w, steps_per_week);
        out.insert(out.end(), week.begin(), week.end());
    }
    return out;
}

}  // namespace carrierflow
