#pragma once

#include "rdtp/data.hpp"
#include "rdtp/instance.hpp"

#include <Eigen/Dense>

#include <set>
#include <string>
#include <vector>

namespace rdtp {

/// Representative days selected from a calendar of days. RDs are ordered by
/// the calendar index of their medoid.
struct RepresentativeDaySet {
    std::vector<DayMatrix> rds;
    std::vector<int> weights;      // omega_d, number of calendar days per RD
    std::vector<char> extreme;     // 1 when the RD is a preserved extreme day
    std::vector<int> membership;   // calendar day -> RD index
    std::vector<std::string> areas;
    std::vector<std::string> features{"load", "wind"};

    int size() const { return static_cast<int>(rds.size()); }
    int n_days() const { return static_cast<int>(membership.size()); }
    void validate() const;
};

struct SldBlock {
    int rd = 0;
    int repetitions = 0;  // n^B
    bool operator==(const SldBlock&) const = default;
};

/// Runs of consecutive calendar days sharing a representative.
struct SLDSequence {
    std::vector<SldBlock> blocks;
    int n_rd = 0;

    /// D_{sd,d}: one row per block, one-hot on the block's RD.
    Eigen::MatrixXd association() const;
    /// Expands the runs back into one RD label per calendar day.
    std::vector<int> decode() const;
    int total_days() const;
    void validate() const;
};

/// Day containing each area's maximum net load (lowest hour wins ties),
/// united over areas. Rows of `net` are areas, columns hours.
std::set<int> extreme_days_from_net_load(const Eigen::MatrixXd& net, int hours_per_day = kHoursPerDay);
std::set<int> find_extreme_days(const HourlyDataset& ds, const PlanningInstance& instance);

/// Ward-linkage agglomeration of the non-extreme days into n_rd - |extreme|
/// clusters represented by medoids; extreme days stay singleton RDs.
RepresentativeDaySet cluster_days(const std::vector<DayMatrix>& days, int n_rd, const std::set<int>& extreme);

SLDSequence map_slds(const RepresentativeDaySet& rdset);
SLDSequence map_slds(const std::vector<int>& membership, int n_rd);

/// Pairwise squared Euclidean distances between flattened days.
Eigen::MatrixXd squared_distances(const std::vector<DayMatrix>& days);

std::string rds_csv(const RepresentativeDaySet& rdset);
std::string slds_csv(const SLDSequence& slds);
SLDSequence parse_slds_csv(const std::string& text);
/// Rebuilds an RD set from `rds.csv`; membership comes from the SLD runs.
RepresentativeDaySet parse_rds_csv(const std::string& text, const SLDSequence& slds);

}  // namespace rdtp
