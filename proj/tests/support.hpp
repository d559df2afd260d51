#pragma once

#include "rdtp/build_config.hpp"
#include "rdtp/common.hpp"
#include "rdtp/data.hpp"
#include "rdtp/instance.hpp"

#include <Eigen/Dense>

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace testing {

namespace fs = std::filesystem;

/// Fresh empty directory under the system temp dir.
inline std::string scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("rdtp_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p.string();
}

inline std::string toy_dir() { return std::string(RDTP_SOURCE_DIR) + "/data/toy"; }

inline rdtp::PlanningInstance toy_instance() { return rdtp::load_instance_json(toy_dir() + "/instance.json"); }

/// Single-series day.
inline Eigen::MatrixXd row(std::initializer_list<double> v) {
    Eigen::MatrixXd y(1, static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) y(0, i++) = x;
    return y;
}

inline Eigen::MatrixXd random_day(std::mt19937_64& rng, int series, int points, double hi = 1.5) {
    std::uniform_real_distribution<double> u(0.0, hi);
    Eigen::MatrixXd y(series, points);
    for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = u(rng);
    return y;
}

/// Dataset of whole days where every hour carries the same factors.
inline rdtp::HourlyDataset flat_dataset(int days, double load, double wind, std::vector<std::string> areas = {"N", "S"}) {
    rdtp::HourlyDataset ds;
    ds.areas = std::move(areas);
    ds.year_length_days = days;
    ds.values.resize(static_cast<Eigen::Index>(ds.areas.size() * 2), days * rdtp::kHoursPerDay);
    for (std::size_t a = 0; a < ds.areas.size(); ++a) {
        ds.values.row(ds.row(static_cast<int>(a), 0)).setConstant(load);
        ds.values.row(ds.row(static_cast<int>(a), 1)).setConstant(wind);
    }
    return ds;
}

}  // namespace testing
