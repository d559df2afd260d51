#include "rdtp/synthetic.hpp"

#include "rdtp/common.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace rdtp {

Eigen::MatrixXd synthetic_raw(const SyntheticOptions& opt) {
    if (opt.days < 1) throw ArgumentError("synthetic data needs at least one day");
    if (opt.peak_mw.size() != opt.areas.size()) throw ArgumentError("one peak per area required");
    const int hours = opt.days * kHoursPerDay;
    const auto na = static_cast<Eigen::Index>(opt.areas.size());
    Eigen::MatrixXd raw(2 * na, hours);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    constexpr double pi = std::numbers::pi;
    for (Eigen::Index a = 0; a < na; ++a) {
        const double phase = 0.7 * static_cast<double>(a);
        std::set<int> peaks;
        std::uniform_int_distribution<int> pick(0, opt.days - 1);
        while (static_cast<int>(peaks.size()) < std::min(opt.injected_peaks, opt.days)) peaks.insert(pick(rng));
        double ar = 0.0, day_level = 0.0;
        for (int h = 0; h < hours; ++h) {
            const int d = h / kHoursPerDay, t = h % kHoursPerDay;
            if (t == 0) day_level = 0.05 * unit(rng);
            const double season = std::cos(2.0 * pi * (d + 15.0 * a) / kYearDays);
            const double daily = 0.5 * std::exp(-std::pow((t - 8.0) / 2.5, 2)) + std::exp(-std::pow((t - 18.5 - phase) / 2.5, 2));
            double load = 0.55 + 0.12 * season + 0.25 * daily + day_level + 0.02 * unit(rng);
            if (peaks.count(d) && t >= 15 && t <= 21) load *= 1.0 + opt.peak_boost;
            raw(2 * a, h) = opt.peak_mw[static_cast<std::size_t>(a)] * load;
            ar = 0.92 * ar + 0.08 * unit(rng) * 2.0;
            const double cf = 0.38 + 0.12 * season + 0.08 * std::sin(2.0 * pi * (t + 4.0 * a) / 24.0) + ar;
            raw(2 * a + 1, h) = std::clamp(cf, 0.0, 1.0);
        }
    }
    return raw;
}

HourlyDataset synthetic_dataset(const SyntheticOptions& opt) {
    const Eigen::MatrixXd raw = synthetic_raw(opt);
    HourlyDataset ds;
    ds.areas = opt.areas;
    ds.year_length_days = opt.days;
    ds.values.resize(raw.rows(), raw.cols());
    for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(opt.areas.size()); ++a) {
        const FactorSeries f = compute_factors(raw.row(2 * a).transpose(), raw.row(2 * a + 1).transpose(),
                                               WindUnit::CapacityFactor, 0.0);
        ds.values.row(ds.row(static_cast<int>(a), ds.load_feature())) = f.load.transpose();
        ds.values.row(ds.row(static_cast<int>(a), ds.wind_feature())) = f.wind.transpose();
    }
    ds.validate();
    return ds;
}

std::string synthetic_csv(const SyntheticOptions& opt, int year) {
    using namespace std::chrono;
    const Eigen::MatrixXd raw = synthetic_raw(opt);
    const sys_days start{std::chrono::year{year} / January / 1};
    std::string out = "timestamp,area,load_mw,wind_cf\n";
    char buf[32];
    for (Eigen::Index h = 0; h < raw.cols(); ++h) {
        const year_month_day ymd{start + days{h / kHoursPerDay}};
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:00", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(h % kHoursPerDay));
        for (std::size_t a = 0; a < opt.areas.size(); ++a)
            out += std::string(buf) + ',' + opt.areas[a] + ',' + format_number(raw(2 * static_cast<Eigen::Index>(a), h)) +
                   ',' + format_number(raw(2 * static_cast<Eigen::Index>(a) + 1, h)) + '\n';
    }
    return out;
}

}  // namespace rdtp
