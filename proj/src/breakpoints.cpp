#include "rdtp/breakpoints.hpp"

#include "rdtp/common.hpp"
#include "rdtp/solver.hpp"

#include <algorithm>
#include <filesystem>
#include <limits>
#include <map>
#include <sstream>

namespace rdtp {

double segment_cost(const DayMatrix& day, int i, int j) {
    if (i < 0 || j >= day.n_points() || i >= j)
        throw ArgumentError("segment_cost: need 0 <= i < j < " + std::to_string(day.n_points()));
    return segment_cost(day.points, i, j);
}

Eigen::MatrixXd segment_cost_table(const Eigen::MatrixXd& y) {
    const auto n = static_cast<int>(y.cols());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) c(i, j) = segment_cost(y, i, j);
    return c;
}

SparseDaySelection optimal_breakpoints(const Eigen::MatrixXd& y, int count) {
    const int n = static_cast<int>(y.cols());
    if (n < 2) throw ArgumentError("a day needs at least two points");
    if (count < 2 || count > n)
        throw ArgumentError("point count " + std::to_string(count) + " outside [2, " + std::to_string(n) + "]");
    const Eigen::MatrixXd cost = segment_cost_table(y);
    const double inf = std::numeric_limits<double>::infinity();

    // rest(i, k): least error from selected point i to the last point using
    // k further selected points, the last of which is n-1.
    Eigen::MatrixXd rest = Eigen::MatrixXd::Constant(n, count, inf);
    rest(n - 1, 0) = 0.0;
    for (int k = 1; k < count; ++k)
        for (int i = n - 2; i >= 0; --i) {
            double best = inf;
            for (int j = i + 1; j < n; ++j)
                if (rest(j, k - 1) < inf) best = std::min(best, cost(i, j) + rest(j, k - 1));
            rest(i, k) = best;
        }

    SparseDaySelection sel;
    sel.requested = count;
    sel.points.push_back(0);
    int i = 0;
    for (int k = count - 1; k >= 1; --k) {
        const double target = rest(i, k);
        const double tol = 1e-12 * (1.0 + std::abs(target));
        int next = -1;
        for (int j = i + 1; j < n; ++j)
            if (rest(j, k - 1) < inf && cost(i, j) + rest(j, k - 1) <= target + tol) {
                next = j;
                break;
            }
        sel.points.push_back(next);
        i = next;
    }
    for (std::size_t s = 0; s + 1 < sel.points.size(); ++s) sel.objective += cost(sel.points[s], sel.points[s + 1]);
    return finalize_selection(std::move(sel));
}

SparseDaySelection optimal_breakpoints(const DayMatrix& day, int count) { return optimal_breakpoints(day.points, count); }

SparseDaySelection finalize_selection(SparseDaySelection sel) {
    sel.durations.clear();
    for (std::size_t s = 0; s + 1 < sel.points.size(); ++s) sel.durations.push_back(sel.points[s + 1] - sel.points[s]);
    return sel;
}

const char* to_string(AllocationMode m) { return m == AllocationMode::Equal ? "equal" : "adaptive"; }

AllocationMode parse_allocation_mode(const std::string& s) {
    if (s == "equal") return AllocationMode::Equal;
    if (s == "adaptive") return AllocationMode::Adaptive;
    throw ArgumentError("unknown allocation mode '" + s + "' (expected equal|adaptive)");
}

AllocationResult allocate_rtps(const std::vector<DayMatrix>& days, int r_avg, int r_min, AllocationMode mode) {
    if (days.empty()) throw ArgumentError("no days to allocate points to");
    const int n_days = static_cast<int>(days.size());
    int capacity = 0, min_points = std::numeric_limits<int>::max();
    for (const auto& d : days) {
        capacity += static_cast<int>(d.n_points());
        min_points = std::min(min_points, static_cast<int>(d.n_points()));
    }
    if (r_min < 2 || r_min > r_avg) throw ArgumentError("need 2 <= r_min <= r_avg");
    const long budget = static_cast<long>(n_days) * r_avg;
    if (budget > capacity)
        throw ArgumentError("budget " + std::to_string(budget) + " exceeds the " + std::to_string(capacity) +
                            " available points");
    if (r_min > min_points || (mode == AllocationMode::Equal && r_avg > min_points))
        throw ArgumentError("requested point count exceeds the points of a day");

    AllocationResult out;
    std::map<std::pair<int, int>, SparseDaySelection> memo;
    auto solve = [&](int d, int r) -> const SparseDaySelection& {
        auto key = std::make_pair(d, r);
        auto it = memo.find(key);
        if (it == memo.end()) {
            SparseDaySelection s = optimal_breakpoints(days[static_cast<std::size_t>(d)], r);
            s.rd_index = d;
            it = memo.emplace(key, std::move(s)).first;
        }
        return it->second;
    };

    std::vector<int> r(static_cast<std::size_t>(n_days), mode == AllocationMode::Equal ? r_avg : r_min);
    auto max_error = [&]() {
        double m = 0.0;
        for (int d = 0; d < n_days; ++d) m = std::max(m, solve(d, r[static_cast<std::size_t>(d)]).objective);
        return m;
    };
    out.max_error_trace.push_back(max_error());
    if (mode == AllocationMode::Adaptive) {
        long total = static_cast<long>(n_days) * r_min;
        while (total < budget) {
            int pick = -1;
            double worst = -1.0;
            for (int d = 0; d < n_days; ++d) {
                if (r[static_cast<std::size_t>(d)] >= days[static_cast<std::size_t>(d)].n_points()) continue;
                const double o = solve(d, r[static_cast<std::size_t>(d)]).objective;
                if (o > worst) {
                    worst = o;
                    pick = d;
                }
            }
            ++r[static_cast<std::size_t>(pick)];
            ++total;
            out.max_error_trace.push_back(max_error());
        }
    }
    for (int d = 0; d < n_days; ++d) out.selections.push_back(solve(d, r[static_cast<std::size_t>(d)]));
    return out;
}

AllocationResult allocate_rtps(const RepresentativeDaySet& rdset, int r_avg, int r_min, AllocationMode mode) {
    return allocate_rtps(rdset.rds, r_avg, r_min, mode);
}

RtpMilp build_rtp_milp(const Eigen::MatrixXd& y, int count, double big_m) {
    const int n = static_cast<int>(y.cols());
    if (count < 2 || count > n) throw ArgumentError("point count outside [2, n]");
    RtpMilp out;
    const double ymax = y.size() ? y.cwiseAbs().maxCoeff() : 0.0;
    if (big_m < ymax)
        out.warnings.push_back("big-M " + format_number(big_m) + " is smaller than max|y| = " + format_number(ymax) +
                               "; the model may be infeasible");
    else if (big_m < 2.0 * ymax)
        out.warnings.push_back("big-M " + format_number(big_m) + " is below 2*max|y|; the optimum may be cut off");

    ModelArtifact& m = out.model;
    m.metadata["model"] = "rtp_selection";
    m.metadata["points"] = std::to_string(n);
    m.metadata["count"] = std::to_string(count);
    m.metadata["big_m"] = format_number(big_m);
    std::vector<int> sel(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) sel[static_cast<std::size_t>(t)] = m.add_binary("I[t" + std::to_string(t) + "]");
    const auto rows = static_cast<int>(y.rows());
    auto key = [](int r, int t) { return "[s" + std::to_string(r) + ".t" + std::to_string(t) + "]"; };
    Eigen::MatrixXi z(rows, n);
    for (int r = 0; r < rows; ++r)
        for (int t = 0; t < n; ++t) {
            z(r, t) = m.add_continuous("Z" + key(r, t), -kInf, kInf);
            const int ep = m.add_continuous("ERp" + key(r, t));
            const int em = m.add_continuous("ERm" + key(r, t));
            m.add_objective(ep, 1.0);
            m.add_objective(em, 1.0);
            m.add_constraint("dev" + key(r, t), "deviation", {{ep, 1.0}, {em, -1.0}, {z(r, t), 1.0}}, Sense::EQ, y(r, t));
        }
    std::vector<Term> cnt;
    for (int v : sel) cnt.push_back({v, 1.0});
    m.add_constraint("count", "count", cnt, Sense::EQ, count);
    m.add_constraint("first", "endpoints", {{sel.front(), 1.0}}, Sense::EQ, 1.0);
    m.add_constraint("last", "endpoints", {{sel.back(), 1.0}}, Sense::EQ, 1.0);
    for (int r = 0; r < rows; ++r)
        for (int t = 0; t < n; ++t) {
            const int it = sel[static_cast<std::size_t>(t)];
            m.add_constraint("pinup" + key(r, t), "pin", {{z(r, t), 1.0}, {it, big_m}}, Sense::LE, y(r, t) + big_m);
            m.add_constraint("pinlo" + key(r, t), "pin", {{z(r, t), 1.0}, {it, -big_m}}, Sense::GE, y(r, t) - big_m);
            if (t == 0 || t == n - 1) continue;
            m.add_constraint("midup" + key(r, t), "midpoint",
                             {{z(r, t), 1.0}, {z(r, t - 1), -0.5}, {z(r, t + 1), -0.5}, {it, -big_m}}, Sense::LE, 0.0);
            m.add_constraint("midlo" + key(r, t), "midpoint",
                             {{z(r, t), 1.0}, {z(r, t - 1), -0.5}, {z(r, t + 1), -0.5}, {it, big_m}}, Sense::GE, 0.0);
        }
    return out;
}

RtpMilp emit_rtp_milp(const DayMatrix& day, int count, double big_m, const std::string& path) {
    RtpMilp out = build_rtp_milp(day.points, count, big_m);
    const std::filesystem::path p(path);
    write_mps(out.model, path, (p.parent_path() / p.stem()).string() + ".varmap.csv");
    return out;
}

std::string rtps_csv(const std::vector<SparseDaySelection>& selections) {
    std::string out = "rd_index,k,J,delta\n";
    for (const auto& s : selections)
        for (int k = 0; k < s.count(); ++k) {
            out += std::to_string(s.rd_index) + ',' + std::to_string(k) + ',' + std::to_string(s.points[static_cast<std::size_t>(k)]) + ',';
            if (k + 1 < s.count()) out += std::to_string(s.durations[static_cast<std::size_t>(k)]);
            out += '\n';
        }
    return out;
}

std::string rtp_errors_csv(const std::vector<SparseDaySelection>& selections) {
    std::string out = "rd_index,r_d,objective\n";
    for (const auto& s : selections)
        out += std::to_string(s.rd_index) + ',' + std::to_string(s.count()) + ',' + format_number(s.objective) + '\n';
    return out;
}

std::vector<SparseDaySelection> parse_rtp_files(const std::string& rtps_text, const std::string& errors_text) {
    std::vector<SparseDaySelection> out;
    std::istringstream er(errors_text);
    std::string line;
    if (!std::getline(er, line) || trim(line) != "rd_index,r_d,objective") throw DataError("rtp_errors.csv: unexpected header");
    while (std::getline(er, line)) {
        if (trim(line).empty()) continue;
        auto c = split(line, ',');
        if (c.size() != 3) throw DataError("rtp_errors.csv: malformed row");
        SparseDaySelection s;
        s.rd_index = parse_int(c[0]);
        s.requested = parse_int(c[1]);
        s.objective = parse_number(c[2]);
        if (s.rd_index != static_cast<int>(out.size())) throw DataError("rtp_errors.csv: RDs out of order");
        out.push_back(s);
    }
    std::istringstream rt(rtps_text);
    if (!std::getline(rt, line) || trim(line) != "rd_index,k,J,delta") throw DataError("rtps.csv: unexpected header");
    while (std::getline(rt, line)) {
        if (trim(line).empty()) continue;
        auto c = split(line, ',');
        if (c.size() != 4) throw DataError("rtps.csv: malformed row");
        const int d = parse_int(c[0]);
        if (d < 0 || d >= static_cast<int>(out.size())) throw DataError("rtps.csv: unknown RD");
        auto& s = out[static_cast<std::size_t>(d)];
        if (parse_int(c[1]) != s.count()) throw DataError("rtps.csv: points out of order");
        s.points.push_back(parse_int(c[2]));
    }
    for (auto& s : out) {
        if (s.count() != s.requested || s.count() < 2) throw DataError("rtps.csv: point count differs from rtp_errors.csv");
        for (int k = 1; k < s.count(); ++k)
            if (s.points[static_cast<std::size_t>(k)] <= s.points[static_cast<std::size_t>(k - 1)])
                throw DataError("rtps.csv: points not strictly increasing");
        if (s.points.front() != 0) throw DataError("rtps.csv: first point must be 0");
        s = finalize_selection(std::move(s));
    }
    return out;
}

}  // namespace rdtp
