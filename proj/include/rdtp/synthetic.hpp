#pragma once

#include "rdtp/data.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rdtp {

/// Seeded generator of multi-area load/wind years for tests and the bundled toy.
struct SyntheticOptions {
    int days = kYearDays;
    std::vector<std::string> areas{"N", "S"};
    std::vector<double> peak_mw{150.0, 100.0};  // raw load scale per area
    std::uint64_t seed = 1;
    /// Days per area whose evening load is raised by `peak_boost`.
    int injected_peaks = 0;
    double peak_boost = 0.35;
};

/// Raw hourly series: rows are `a * 2 + {0: load MW, 1: wind capacity factor}`.
Eigen::MatrixXd synthetic_raw(const SyntheticOptions& opt);
/// Normalized dataset built from synthetic_raw through compute_factors.
HourlyDataset synthetic_dataset(const SyntheticOptions& opt);
/// `timestamp,area,load_mw,wind_cf` CSV of synthetic_raw for the given year.
std::string synthetic_csv(const SyntheticOptions& opt, int year = 2019);

}  // namespace rdtp
