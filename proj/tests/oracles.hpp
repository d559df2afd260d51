#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace testing {

/// Absolute deviation from straight chords through the chosen points,
/// computed point by point without any segment table.
inline double chord_error(const Eigen::MatrixXd& y, const std::vector<int>& J) {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < J.size(); ++k) {
        const int i = J[k], j = J[k + 1];
        for (Eigen::Index r = 0; r < y.rows(); ++r)
            for (int t = i + 1; t < j; ++t) {
                const double w = double(t - i) / double(j - i);
                total += std::abs(y(r, t) - ((1 - w) * y(r, i) + w * y(r, j)));
            }
    }
    return total;
}

struct Exhaustive {
    double objective = 0.0;
    std::vector<int> points;
};

/// Every subset of interior points of the right size, in lexicographic
/// order; the first one within `tol` of the minimum wins.
inline Exhaustive exhaustive_breakpoints(const Eigen::MatrixXd& y, int count, double tol = 1e-9) {
    const int n = static_cast<int>(y.cols());
    const int inner = count - 2;
    std::vector<std::vector<int>> all;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(pick.size()) == inner) {
            std::vector<int> J{0};
            J.insert(J.end(), pick.begin(), pick.end());
            J.push_back(n - 1);
            all.push_back(J);
            return;
        }
        for (int t = from; t < n - 1; ++t) {
            pick.push_back(t);
            self(self, t + 1);
            pick.pop_back();
        }
    };
    rec(rec, 1);
    double best = INFINITY;
    for (const auto& J : all) best = std::min(best, chord_error(y, J));
    for (const auto& J : all)
        if (chord_error(y, J) <= best + tol) return {best, J};
    return {};
}

}  // namespace testing
