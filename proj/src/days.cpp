#include "rdtp/days.hpp"

#include "rdtp/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace rdtp {

void RepresentativeDaySet::validate() const {
    const int n = size();
    if (n == 0) throw DataError("RD set is empty");
    if (static_cast<int>(weights.size()) != n || static_cast<int>(extreme.size()) != n)
        throw DataError("RD set: weights/flags size mismatch");
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    for (int label : membership) {
        if (label < 0 || label >= n) throw DataError("RD set: membership label out of range");
        ++counts[static_cast<std::size_t>(label)];
    }
    for (int d = 0; d < n; ++d) {
        if (weights[d] <= 0) throw DataError("RD set: non-positive weight");
        if (counts[d] != weights[d]) throw DataError("RD set: weight differs from membership count");
    }
    if (std::accumulate(weights.begin(), weights.end(), 0) != n_days())
        throw DataError("RD set: weights do not sum to the number of days");
}

Eigen::MatrixXd SLDSequence::association() const {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(blocks.size()), n_rd);
    for (std::size_t sd = 0; sd < blocks.size(); ++sd) D(static_cast<Eigen::Index>(sd), blocks[sd].rd) = 1.0;
    return D;
}

std::vector<int> SLDSequence::decode() const {
    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(total_days()));
    for (const auto& b : blocks) labels.insert(labels.end(), static_cast<std::size_t>(b.repetitions), b.rd);
    return labels;
}

int SLDSequence::total_days() const {
    int n = 0;
    for (const auto& b : blocks) n += b.repetitions;
    return n;
}

void SLDSequence::validate() const {
    if (blocks.empty()) throw DataError("SLD sequence is empty");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].rd < 0 || blocks[i].rd >= n_rd) throw DataError("SLD block references an unknown RD");
        if (blocks[i].repetitions <= 0) throw DataError("SLD block with non-positive repetitions");
        if (i > 0 && blocks[i].rd == blocks[i - 1].rd) throw DataError("adjacent SLD blocks share an RD");
    }
}

std::set<int> extreme_days_from_net_load(const Eigen::MatrixXd& net, int hours_per_day) {
    std::set<int> out;
    for (Eigen::Index a = 0; a < net.rows(); ++a) {
        Eigen::Index best = 0;
        net.row(a).maxCoeff(&best);  // first occurrence of the maximum
        out.insert(static_cast<int>(best / hours_per_day));
    }
    return out;
}

std::set<int> find_extreme_days(const HourlyDataset& ds, const PlanningInstance& instance) {
    return extreme_days_from_net_load(net_load_matrix(ds, instance));
}

Eigen::MatrixXd squared_distances(const std::vector<DayMatrix>& days) {
    const auto n = static_cast<Eigen::Index>(days.size());
    if (n == 0) return {};
    Eigen::MatrixXd X(n, days.front().points.size());
    for (Eigen::Index i = 0; i < n; ++i) X.row(i) = days[static_cast<std::size_t>(i)].flattened().transpose();
    Eigen::MatrixXd D(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        D(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) D(i, j) = D(j, i) = (X.row(i) - X.row(j)).squaredNorm();
    }
    return D;
}

RepresentativeDaySet cluster_days(const std::vector<DayMatrix>& days, int n_rd, const std::set<int>& extreme) {
    const int n_days = static_cast<int>(days.size());
    if (n_days == 0) throw ArgumentError("no days to cluster");
    for (std::size_t i = 0; i < days.size(); ++i)
        if (days[i].day_index != static_cast<int>(i)) throw ArgumentError("days must be in calendar order");
    for (int e : extreme)
        if (e < 0 || e >= n_days) throw ArgumentError("extreme day index out of range");
    const int n_extreme = static_cast<int>(extreme.size());
    if (n_rd < n_extreme + 1)
        throw ArgumentError("n_rd = " + std::to_string(n_rd) + " is smaller than the " + std::to_string(n_extreme) +
                            " extreme days + 1");
    if (n_rd > n_days) throw ArgumentError("n_rd exceeds the number of days");

    std::vector<int> pool;
    for (int d = 0; d < n_days; ++d)
        if (!extreme.count(d)) pool.push_back(d);
    const int m = static_cast<int>(pool.size());
    const int target = n_rd - n_extreme;

    std::vector<DayMatrix> pool_days;
    pool_days.reserve(pool.size());
    for (int d : pool) pool_days.push_back(days[static_cast<std::size_t>(d)]);
    const Eigen::MatrixXd sq = squared_distances(pool_days);
    Eigen::MatrixXd ward = sq;

    // Slot i keeps the cluster whose lowest pool index is i; merges always
    // absorb the higher slot, so scanning (i, j) ascending breaks ties by
    // lowest day index.
    std::vector<int> size(static_cast<std::size_t>(m), 1);
    std::vector<char> active(static_cast<std::size_t>(m), 1);
    std::vector<std::vector<int>> members(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) members[static_cast<std::size_t>(i)] = {i};
    int n_active = m;
    while (n_active > target) {
        double best = std::numeric_limits<double>::infinity();
        int bi = -1, bj = -1;
        for (int i = 0; i < m; ++i) {
            if (!active[i]) continue;
            for (int j = i + 1; j < m; ++j) {
                if (!active[j]) continue;
                if (ward(i, j) < best) {
                    best = ward(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }
        const double ni = size[bi], nj = size[bj];
        for (int x = 0; x < m; ++x) {
            if (!active[x] || x == bi || x == bj) continue;
            const double nx = size[x];
            const double d = ((ni + nx) * ward(bi, x) + (nj + nx) * ward(bj, x) - nx * ward(bi, bj)) / (ni + nj + nx);
            ward(bi, x) = ward(x, bi) = d;
        }
        size[bi] += size[bj];
        active[bj] = 0;
        auto& dst = members[static_cast<std::size_t>(bi)];
        auto& src = members[static_cast<std::size_t>(bj)];
        dst.insert(dst.end(), src.begin(), src.end());
        std::sort(dst.begin(), dst.end());
        src.clear();
        --n_active;
    }

    struct Cluster {
        int medoid_day;
        std::vector<int> days;
        bool extreme;
    };
    std::vector<Cluster> clusters;
    for (int i = 0; i < m; ++i) {
        if (!active[i]) continue;
        const auto& mem = members[static_cast<std::size_t>(i)];
        int medoid = mem.front();
        double best = std::numeric_limits<double>::infinity();
        for (int c : mem) {
            double total = 0.0;
            for (int o : mem) total += std::sqrt(sq(c, o));
            if (total < best) {
                best = total;
                medoid = c;
            }
        }
        Cluster cl{pool[static_cast<std::size_t>(medoid)], {}, false};
        for (int c : mem) cl.days.push_back(pool[static_cast<std::size_t>(c)]);
        clusters.push_back(std::move(cl));
    }
    for (int e : extreme) clusters.push_back({e, {e}, true});
    std::sort(clusters.begin(), clusters.end(),
              [](const Cluster& a, const Cluster& b) { return a.medoid_day < b.medoid_day; });

    RepresentativeDaySet out;
    out.membership.assign(static_cast<std::size_t>(n_days), -1);
    for (std::size_t k = 0; k < clusters.size(); ++k) {
        out.rds.push_back(days[static_cast<std::size_t>(clusters[k].medoid_day)]);
        out.weights.push_back(static_cast<int>(clusters[k].days.size()));
        out.extreme.push_back(clusters[k].extreme ? 1 : 0);
        for (int d : clusters[k].days) out.membership[static_cast<std::size_t>(d)] = static_cast<int>(k);
    }
    out.validate();
    return out;
}

SLDSequence map_slds(const std::vector<int>& membership, int n_rd) {
    SLDSequence s;
    s.n_rd = n_rd;
    for (int label : membership) {
        if (!s.blocks.empty() && s.blocks.back().rd == label)
            ++s.blocks.back().repetitions;
        else
            s.blocks.push_back({label, 1});
    }
    s.validate();
    return s;
}

SLDSequence map_slds(const RepresentativeDaySet& rdset) {
    if (std::find(rdset.membership.begin(), rdset.membership.end(), -1) != rdset.membership.end())
        throw DataError("membership is incomplete");
    return map_slds(rdset.membership, rdset.size());
}

std::string rds_csv(const RepresentativeDaySet& rdset) {
    std::string out = "rd_index,weight,extreme_flag,area,feature,t,value\n";
    const auto nf = static_cast<int>(rdset.features.size());
    for (int d = 0; d < rdset.size(); ++d) {
        const auto& pts = rdset.rds[static_cast<std::size_t>(d)].points;
        for (std::size_t a = 0; a < rdset.areas.size(); ++a)
            for (int f = 0; f < nf; ++f)
                for (Eigen::Index t = 0; t < pts.cols(); ++t) {
                    out += std::to_string(d) + ',' + std::to_string(rdset.weights[d]) + ',' +
                           std::to_string(int(rdset.extreme[d])) + ',' + rdset.areas[a] + ',' +
                           rdset.features[static_cast<std::size_t>(f)] + ',' + std::to_string(t) + ',' +
                           format_number(pts(static_cast<Eigen::Index>(a) * nf + f, t)) + '\n';
                }
    }
    return out;
}

std::string slds_csv(const SLDSequence& slds) {
    std::string out = "block_index,rd_index,n_b\n";
    for (std::size_t i = 0; i < slds.blocks.size(); ++i)
        out += std::to_string(i) + ',' + std::to_string(slds.blocks[i].rd) + ',' +
               std::to_string(slds.blocks[i].repetitions) + '\n';
    return out;
}

SLDSequence parse_slds_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "block_index,rd_index,n_b")
        throw DataError("slds.csv: header must be 'block_index,rd_index,n_b'");
    SLDSequence s;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != 3) throw DataError("slds.csv: row " + std::to_string(row) + ": expected 3 columns");
        if (parse_int(cells[0]) != static_cast<int>(s.blocks.size()))
            throw DataError("slds.csv: row " + std::to_string(row) + ": blocks out of order");
        s.blocks.push_back({parse_int(cells[1]), parse_int(cells[2])});
        s.n_rd = std::max(s.n_rd, s.blocks.back().rd + 1);
    }
    s.validate();
    return s;
}

RepresentativeDaySet parse_rds_csv(const std::string& text, const SLDSequence& slds) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "rd_index,weight,extreme_flag,area,feature,t,value")
        throw DataError("rds.csv: unexpected header");
    struct Entry {
        int rd, area, feature, t;
        double value;
    };
    RepresentativeDaySet out;
    out.features.clear();
    std::vector<Entry> entries;
    std::map<int, std::pair<int, int>> meta;
    int max_t = -1, row = 1;
    auto index_of = [](std::vector<std::string>& names, const std::string& n) {
        auto it = std::find(names.begin(), names.end(), n);
        if (it != names.end()) return static_cast<int>(it - names.begin());
        names.push_back(n);
        return static_cast<int>(names.size() - 1);
    };
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto c = split(line, ',');
        if (c.size() != 7) throw DataError("rds.csv: row " + std::to_string(row) + ": expected 7 columns");
        Entry e{parse_int(c[0]), index_of(out.areas, c[3]), index_of(out.features, c[4]), parse_int(c[5]),
                parse_number(c[6])};
        meta[e.rd] = {parse_int(c[1]), parse_int(c[2])};
        max_t = std::max(max_t, e.t);
        entries.push_back(e);
    }
    const int n_rd = meta.empty() ? 0 : meta.rbegin()->first + 1;
    if (n_rd != static_cast<int>(meta.size())) throw DataError("rds.csv: RD indices are not contiguous");
    if (slds.n_rd > n_rd) throw DataError("slds reference an RD absent from rds.csv");
    const auto nf = static_cast<Eigen::Index>(out.features.size());
    const auto rows = static_cast<Eigen::Index>(out.areas.size()) * nf;
    out.rds.resize(static_cast<std::size_t>(n_rd));
    for (int d = 0; d < n_rd; ++d) {
        out.rds[d].points = Eigen::MatrixXd::Constant(rows, max_t + 1, std::numeric_limits<double>::quiet_NaN());
        out.weights.push_back(meta[d].first);
        out.extreme.push_back(static_cast<char>(meta[d].second));
    }
    for (const auto& e : entries) out.rds[static_cast<std::size_t>(e.rd)].points(e.area * nf + e.feature, e.t) = e.value;
    for (const auto& rd : out.rds)
        if (rd.points.hasNaN()) throw DataError("rds.csv: incomplete RD profile");
    out.membership = slds.decode();
    for (int d = 0; d < n_rd; ++d) {
        auto it = std::find(out.membership.begin(), out.membership.end(), d);
        out.rds[d].day_index = it == out.membership.end() ? -1 : static_cast<int>(it - out.membership.begin());
    }
    out.validate();
    return out;
}

}  // namespace rdtp
