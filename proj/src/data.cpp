#include "rdtp/data.hpp"

#include "rdtp/common.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <sstream>

namespace rdtp {

int HourlyDataset::area_index(const std::string& name) const {
    auto it = std::find(areas.begin(), areas.end(), name);
    if (it == areas.end()) throw DataError("unknown area '" + name + "'");
    return static_cast<int>(it - areas.begin());
}

int HourlyDataset::feature_index(const std::string& name) const {
    auto it = std::find(features.begin(), features.end(), name);
    if (it == features.end()) throw DataError("dataset has no feature '" + name + "'");
    return static_cast<int>(it - features.begin());
}

void HourlyDataset::validate() const {
    if (areas.empty()) throw DataError("dataset has no areas");
    if (year_length_days <= 0) throw DataError("dataset has no days");
    const int lf = load_feature();
    const int wf = wind_feature();
    if (values.rows() != static_cast<Eigen::Index>(areas.size() * features.size()) || values.cols() != hours())
        throw DataError("dataset values have the wrong shape");
    for (int a = 0; a < static_cast<int>(areas.size()); ++a) {
        for (int h = 0; h < hours(); ++h) {
            const double fl = values(row(a, lf), h);
            const double fw = values(row(a, wf), h);
            if (!(fl > 0.0)) throw DataError("area " + areas[a] + ", hour " + std::to_string(h) + ": load factor must be positive");
            if (!(fw >= 0.0 && fw <= 1.0))
                throw DataError("area " + areas[a] + ", hour " + std::to_string(h) + ": wind factor out of [0,1]");
        }
    }
}

Eigen::VectorXd DayMatrix::flattened() const {
    Eigen::VectorXd v(points.size());
    Eigen::Index k = 0;
    for (Eigen::Index r = 0; r < points.rows(); ++r)
        for (Eigen::Index c = 0; c < points.cols(); ++c) v(k++) = points(r, c);
    return v;
}

std::pair<int, int> parse_hour_of_year(const std::string& timestamp) {
    using namespace std::chrono;
    const std::string_view ts = trim(timestamp);
    auto bad = [&]() { return DataError("malformed timestamp '" + std::string(ts) + "'"); };
    if (ts.size() < 13 || ts[4] != '-' || ts[7] != '-' || (ts[10] != 'T' && ts[10] != ' ')) throw bad();
    int y = 0, mo = 0, d = 0, hh = 0, mm = 0, ss = 0;
    try {
        y = parse_int(ts.substr(0, 4));
        mo = parse_int(ts.substr(5, 2));
        d = parse_int(ts.substr(8, 2));
        hh = parse_int(ts.substr(11, 2));
        std::string_view rest = ts.substr(13);
        if (!rest.empty() && rest.back() == 'Z') rest.remove_suffix(1);
        if (!rest.empty()) {
            if (rest.size() < 3 || rest[0] != ':') throw bad();
            mm = parse_int(rest.substr(1, 2));
            rest.remove_prefix(3);
            if (!rest.empty()) {
                if (rest.size() != 3 || rest[0] != ':') throw bad();
                ss = parse_int(rest.substr(1, 2));
            }
        }
    } catch (const DataError&) {
        throw bad();
    }
    if (mm != 0 || ss != 0) throw DataError("timestamp '" + std::string(ts) + "' is not on the hour");
    const year_month_day date{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!date.ok() || hh < 0 || hh > 23) throw bad();
    const auto doy = (sys_days{date} - sys_days{year{y} / January / 1}).count();
    return {static_cast<int>(doy) * kHoursPerDay + hh, y};
}

FactorSeries compute_factors(const Eigen::VectorXd& raw_load_mw, const Eigen::VectorXd& raw_wind, WindUnit unit,
                             double installed_wind_mw) {
    if (raw_load_mw.size() == 0) throw DataError("empty load series");
    const double peak = raw_load_mw.maxCoeff();
    if (!(peak > 0.0)) throw DataError("zero peak load");
    FactorSeries out;
    out.load = raw_load_mw / peak;
    if (unit == WindUnit::Megawatt) {
        if (!(installed_wind_mw > 0.0)) throw DataError("installed wind capacity must be positive");
        out.wind = raw_wind / installed_wind_mw;
    } else {
        out.wind = raw_wind;
    }
    for (Eigen::Index h = 0; h < out.wind.size(); ++h)
        if (!(out.wind(h) >= 0.0 && out.wind(h) <= 1.0))
            throw DataError("hour index " + std::to_string(h) + ": wind factor out of [0,1]");
    return out;
}

namespace {

std::map<std::string, double> read_capacity_table(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::map<std::string, double> out;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto cells = split(line, ',');
        if (row == 1) {
            if (cells.size() < 2 || cells[0] != "area" || cells[1] != "installed_wind_mw")
                throw DataError(path + ": header must be 'area,installed_wind_mw'");
            continue;
        }
        if (cells.size() != 2) throw DataError(path + ": row " + std::to_string(row) + ": expected 2 columns");
        try {
            out[cells[0]] = parse_number(cells[1]);
        } catch (const DataError& e) {
            throw DataError(path + ": row " + std::to_string(row) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace

HourlyDataset load_hourly_csv(const std::string& path, const CsvSchema& schema) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    const auto header = split(line, ',');
    auto column = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw DataError(path + ": missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_ts = column(schema.timestamp_column);
    const std::size_t c_area = column(schema.area_column);
    const std::size_t c_load = column(schema.load_column);
    const std::size_t c_wind = column(schema.wind_column);

    std::vector<std::string> areas = schema.areas;
    const bool declared = !areas.empty();
    const int hours = kYearDays * kHoursPerDay;
    std::vector<Eigen::VectorXd> load, wind;
    std::vector<std::vector<int>> seen_row;  // row number per hour, 0 = absent
    auto ensure_area = [&](std::size_t idx) {
        while (load.size() <= idx) {
            load.emplace_back(Eigen::VectorXd::Zero(hours));
            wind.emplace_back(Eigen::VectorXd::Zero(hours));
            seen_row.emplace_back(hours, 0);
        }
    };
    for (std::size_t i = 0; i < areas.size(); ++i) ensure_area(i);

    int row = 1;
    int data_year = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::string where = path + ": row " + std::to_string(row) + ": ";
        const auto cells = split(line, ',');
        if (cells.size() != header.size())
            throw DataError(where + "expected " + std::to_string(header.size()) + " columns, got " +
                            std::to_string(cells.size()));
        int hour = 0, yr = 0;
        try {
            std::tie(hour, yr) = parse_hour_of_year(cells[c_ts]);
        } catch (const DataError& e) {
            throw DataError(where + e.what());
        }
        if (data_year == 0) {
            data_year = yr;
            const std::chrono::year y{yr};
            if (y.is_leap()) throw DataError(where + "leap year " + std::to_string(yr) + " rejected: exactly 365 days required");
        } else if (yr != data_year) {
            throw DataError(where + "timestamp outside year " + std::to_string(data_year));
        }
        auto it = std::find(areas.begin(), areas.end(), cells[c_area]);
        if (it == areas.end()) {
            if (declared) throw DataError(where + "unknown area '" + cells[c_area] + "'");
            areas.push_back(cells[c_area]);
            it = areas.end() - 1;
        }
        const auto a = static_cast<std::size_t>(it - areas.begin());
        ensure_area(a);
        if (seen_row[a][hour] != 0)
            throw DataError(where + "duplicate timestamp " + cells[c_ts] + " for area " + areas[a] + " (first at row " +
                            std::to_string(seen_row[a][hour]) + ")");
        seen_row[a][hour] = row;
        double lv = 0.0, wv = 0.0;
        try {
            lv = parse_number(cells[c_load]);
            wv = parse_number(cells[c_wind]);
        } catch (const DataError& e) {
            throw DataError(where + e.what());
        }
        if (!(lv > 0.0)) throw DataError(where + "load must be positive");
        if (schema.wind_unit == WindUnit::CapacityFactor && !(wv >= 0.0 && wv <= 1.0))
            throw DataError(where + "wind factor out of [0,1]");
        if (schema.wind_unit == WindUnit::Megawatt && wv < 0.0) throw DataError(where + "negative wind power");
        load[a](hour) = lv;
        wind[a](hour) = wv;
    }
    if (areas.empty()) throw DataError(path + ": no data rows");

    std::map<std::string, double> capacity;
    if (schema.wind_unit == WindUnit::Megawatt) {
        if (schema.capacity_table.empty()) throw DataError(path + ": wind in MW requires a capacity table");
        capacity = read_capacity_table(schema.capacity_table);
    }

    HourlyDataset ds;
    ds.areas = areas;
    ds.features = {"load", "wind"};
    ds.year_length_days = kYearDays;
    ds.values.resize(static_cast<Eigen::Index>(areas.size() * 2), hours);
    for (std::size_t a = 0; a < areas.size(); ++a) {
        for (int h = 0; h < hours; ++h)
            if (seen_row[a][h] == 0)
                throw DataError(path + ": area " + areas[a] + ": gap at hour index " + std::to_string(h));
        double installed = 0.0;
        if (schema.wind_unit == WindUnit::Megawatt) {
            auto c = capacity.find(areas[a]);
            if (c == capacity.end()) throw DataError(path + ": no installed wind capacity for area " + areas[a]);
            installed = c->second;
        }
        FactorSeries f;
        try {
            f = compute_factors(load[a], wind[a], schema.wind_unit, installed);
        } catch (const DataError& e) {
            throw DataError(path + ": area " + areas[a] + ": " + e.what());
        }
        ds.values.row(ds.row(static_cast<int>(a), 0)) = f.load.transpose();
        ds.values.row(ds.row(static_cast<int>(a), 1)) = f.wind.transpose();
    }
    ds.validate();
    return ds;
}

std::vector<DayMatrix> slice_days(const HourlyDataset& ds) {
    std::vector<DayMatrix> days;
    days.reserve(static_cast<std::size_t>(ds.year_length_days));
    const Eigen::Index rows = ds.values.rows();
    for (int d = 0; d < ds.year_length_days; ++d) {
        DayMatrix day;
        day.day_index = d;
        day.points.resize(rows, kPointsPerDay);
        day.points.leftCols(kHoursPerDay) = ds.values.middleCols(static_cast<Eigen::Index>(d) * kHoursPerDay, kHoursPerDay);
        day.points.col(kHoursPerDay) = ds.values.col(((d + 1) * kHoursPerDay) % ds.hours());
        days.push_back(std::move(day));
    }
    return days;
}

double net_load(const HourlyDataset& ds, const PlanningInstance& instance, int area, int hour) {
    if (area < 0 || area >= static_cast<int>(ds.areas.size()))
        throw DataError("unknown area index " + std::to_string(area));
    const int ia = instance.area_index(ds.areas[static_cast<std::size_t>(area)]);
    return ds.value(area, ds.load_feature(), hour) * instance.area_peak_load(ia) -
           ds.value(area, ds.wind_feature(), hour) * instance.area_wind_ceiling(ia);
}

double net_load(const HourlyDataset& ds, const PlanningInstance& instance, const std::string& area, int hour) {
    return net_load(ds, instance, ds.area_index(area), hour);
}

Eigen::MatrixXd net_load_matrix(const HourlyDataset& ds, const PlanningInstance& instance) {
    const auto na = static_cast<Eigen::Index>(ds.areas.size());
    Eigen::MatrixXd net(na, ds.hours());
    for (Eigen::Index a = 0; a < na; ++a) {
        const int ia = instance.area_index(ds.areas[static_cast<std::size_t>(a)]);
        net.row(a) = ds.values.row(ds.row(static_cast<int>(a), ds.load_feature())) * instance.area_peak_load(ia) -
                     ds.values.row(ds.row(static_cast<int>(a), ds.wind_feature())) * instance.area_wind_ceiling(ia);
    }
    return net;
}

std::string factors_csv(const HourlyDataset& ds) {
    std::string out = "hour,area,load,wind\n";
    const int lf = ds.load_feature();
    const int wf = ds.wind_feature();
    for (int h = 0; h < ds.hours(); ++h)
        for (std::size_t a = 0; a < ds.areas.size(); ++a) {
            out += std::to_string(h);
            out += ',';
            out += ds.areas[a];
            out += ',';
            out += format_number(ds.value(static_cast<int>(a), lf, h));
            out += ',';
            out += format_number(ds.value(static_cast<int>(a), wf, h));
            out += '\n';
        }
    return out;
}

HourlyDataset parse_factors_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "hour,area,load,wind")
        throw DataError("factors: header must be 'hour,area,load,wind'");
    std::vector<std::string> areas;
    std::vector<std::pair<double, double>> vals;
    std::vector<int> area_of, hour_of;
    int max_hour = -1;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != 4) throw DataError("factors: row " + std::to_string(row) + ": expected 4 columns");
        auto it = std::find(areas.begin(), areas.end(), cells[1]);
        if (it == areas.end()) {
            areas.push_back(cells[1]);
            it = areas.end() - 1;
        }
        const int h = parse_int(cells[0]);
        if (h < 0) throw DataError("factors: row " + std::to_string(row) + ": negative hour");
        max_hour = std::max(max_hour, h);
        hour_of.push_back(h);
        area_of.push_back(static_cast<int>(it - areas.begin()));
        vals.emplace_back(parse_number(cells[2]), parse_number(cells[3]));
    }
    if ((max_hour + 1) % kHoursPerDay != 0) throw DataError("factors: hour count is not a whole number of days");
    HourlyDataset ds;
    ds.areas = areas;
    ds.year_length_days = (max_hour + 1) / kHoursPerDay;
    ds.values = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(areas.size() * 2), max_hour + 1,
                                          std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        ds.values(ds.row(area_of[i], 0), hour_of[i]) = vals[i].first;
        ds.values(ds.row(area_of[i], 1), hour_of[i]) = vals[i].second;
    }
    if (ds.values.hasNaN()) throw DataError("factors: incomplete table");
    ds.validate();
    return ds;
}

}  // namespace rdtp
