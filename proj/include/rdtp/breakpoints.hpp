#pragma once

#include "rdtp/data.hpp"
#include "rdtp/days.hpp"
#include "rdtp/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

namespace rdtp {

/// Selected time points of one representative day.
struct SparseDaySelection {
    int rd_index = 0;
    int requested = 0;           // requested point count
    std::vector<int> points;     // J, strictly increasing, first 0 and last n-1
    std::vector<int> durations;  // hours between consecutive points
    double objective = 0.0;      // total absolute interpolation error

    int count() const { return static_cast<int>(points.size()); }
};

/// Sum over all series (rows) of the absolute deviation between the
/// interior samples of [i, j] and the chord joining samples i and j.
template <typename Derived>
typename Derived::Scalar segment_cost(const Eigen::MatrixBase<Derived>& y, int i, int j) {
    using Scalar = typename Derived::Scalar;
    Scalar total(0);
    const Scalar span = Scalar(j - i);
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
        const Scalar yi = y(r, i), yj = y(r, j);
        for (int t = i + 1; t < j; ++t) {
            const Scalar chord = yi + (yj - yi) * (Scalar(t - i) / span);
            total += std::abs(y(r, t) - chord);
        }
    }
    return total;
}

double segment_cost(const DayMatrix& day, int i, int j);

/// Upper-triangular table of segment costs for all i < j.
Eigen::MatrixXd segment_cost_table(const Eigen::MatrixXd& y);

/// Exact minimum-error selection of `count` points including both ends,
/// by dynamic programming over segments; ties go to the lexicographically
/// smallest selection.
SparseDaySelection optimal_breakpoints(const Eigen::MatrixXd& y, int count);
SparseDaySelection optimal_breakpoints(const DayMatrix& day, int count);

/// Fills the durations between consecutive selected points.
SparseDaySelection finalize_selection(SparseDaySelection sel);

enum class AllocationMode { Equal, Adaptive };
const char* to_string(AllocationMode m);
AllocationMode parse_allocation_mode(const std::string& s);

struct AllocationResult {
    std::vector<SparseDaySelection> selections;  // finalized, one per RD
    /// Largest per-day error before the first and after every increment.
    std::vector<double> max_error_trace;
};

/// Equal mode gives every day r_avg points. Adaptive mode starts every day
/// at r_min and repeatedly adds a point to the day with the largest error
/// until the total reaches |days| * r_avg.
AllocationResult allocate_rtps(const std::vector<DayMatrix>& days, int r_avg, int r_min, AllocationMode mode);
AllocationResult allocate_rtps(const RepresentativeDaySet& rdset, int r_avg, int r_min, AllocationMode mode);

/// Big-M MILP whose optimum equals optimal_breakpoints(y, count).objective.
struct RtpMilp {
    ModelArtifact model;
    std::vector<std::string> warnings;
};
RtpMilp build_rtp_milp(const Eigen::MatrixXd& y, int count, double big_m = 10.0);
/// Builds the MILP and writes it as MPS to `path`, names to `<stem>.varmap.csv`.
RtpMilp emit_rtp_milp(const DayMatrix& day, int count, double big_m, const std::string& path);

std::string rtps_csv(const std::vector<SparseDaySelection>& selections);
std::string rtp_errors_csv(const std::vector<SparseDaySelection>& selections);
std::vector<SparseDaySelection> parse_rtp_files(const std::string& rtps_text, const std::string& errors_text);

}  // namespace rdtp
