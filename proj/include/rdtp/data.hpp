#pragma once

#include "rdtp/instance.hpp"

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace rdtp {

inline constexpr int kHoursPerDay = 24;
inline constexpr int kPointsPerDay = kHoursPerDay + 1;
inline constexpr int kYearDays = 365;

/// Hourly multi-area factor series. Row `a * features.size() + f` of
/// `values` holds feature f of area a; one column per hour. Hour index
/// `hours()` aliases hour 0, closing the annual cycle.
struct HourlyDataset {
    std::vector<std::string> areas;
    std::vector<std::string> features{"load", "wind"};
    Eigen::MatrixXd values;
    int year_length_days = kYearDays;

    int hours() const { return year_length_days * kHoursPerDay; }
    Eigen::Index row(int area, int feature) const {
        return static_cast<Eigen::Index>(area) * static_cast<Eigen::Index>(features.size()) + feature;
    }
    double value(int area, int feature, int hour) const { return values(row(area, feature), hour % hours()); }

    int area_index(const std::string& name) const;
    int feature_index(const std::string& name) const;
    int load_feature() const { return feature_index("load"); }
    int wind_feature() const { return feature_index("wind"); }

    /// Shape and range checks: load factors > 0, wind factors in [0,1].
    void validate() const;
};

/// One day of factors with both midnights: rows as in HourlyDataset, 25 columns.
struct DayMatrix {
    int day_index = 0;
    Eigen::MatrixXd points;

    Eigen::Index n_points() const { return points.cols(); }
    /// Flattened (row-major by series) feature vector used for day distances.
    Eigen::VectorXd flattened() const;
};

enum class WindUnit { CapacityFactor, Megawatt };

/// Column mapping for the hourly input CSV.
struct CsvSchema {
    std::string timestamp_column = "timestamp";
    std::string area_column = "area";
    std::string load_column = "load_mw";
    std::string wind_column = "wind_cf";
    WindUnit wind_unit = WindUnit::CapacityFactor;
    /// `area,installed_wind_mw` sidecar; required when wind_unit is Megawatt.
    std::string capacity_table;
    /// Declared areas in output order. Empty: areas in order of first appearance.
    std::vector<std::string> areas;
};

HourlyDataset load_hourly_csv(const std::string& path, const CsvSchema& schema);

/// Hour-of-year index of an ISO-8601 hourly timestamp, plus its year.
std::pair<int, int> parse_hour_of_year(const std::string& timestamp);

struct FactorSeries {
    Eigen::VectorXd load;
    Eigen::VectorXd wind;
};

/// Load normalized by the series peak; wind as a capacity factor.
/// `installed_wind_mw` is only used when `unit` is Megawatt.
FactorSeries compute_factors(const Eigen::VectorXd& raw_load_mw, const Eigen::VectorXd& raw_wind, WindUnit unit,
                             double installed_wind_mw = 0.0);

std::vector<DayMatrix> slice_days(const HourlyDataset& ds);

/// FL * L_area - FW * Wmax_area for one hour.
double net_load(const HourlyDataset& ds, const PlanningInstance& instance, int area, int hour);
double net_load(const HourlyDataset& ds, const PlanningInstance& instance, const std::string& area, int hour);
/// Net load of every dataset area (rows) for every hour (columns).
Eigen::MatrixXd net_load_matrix(const HourlyDataset& ds, const PlanningInstance& instance);

/// `hour,area,load,wind` normalized factor table.
std::string factors_csv(const HourlyDataset& ds);
HourlyDataset parse_factors_csv(const std::string& text);

}  // namespace rdtp
