#include "oracles.hpp"
#include "support.hpp"

#include "rdtp/breakpoints.hpp"
#include "rdtp/coplan.hpp"
#include "rdtp/days.hpp"
#include "rdtp/synthetic.hpp"

#include <doctest.h>

#include <algorithm>

using namespace rdtp;

TEST_CASE("dp matches exhaustive search on random small days") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> npts(3, 10), nser(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::MatrixXd y = testing::random_day(rng, nser(rng), npts(rng));
        for (int r = 2; r <= y.cols(); ++r) {
            CAPTURE(trial);
            CAPTURE(r);
            const auto ex = testing::exhaustive_breakpoints(y, r);
            const auto dp = optimal_breakpoints(y, r);
            CHECK(dp.objective == doctest::Approx(ex.objective).epsilon(1e-9));
            CHECK(dp.points == ex.points);
            CHECK(testing::chord_error(y, dp.points) == doctest::Approx(dp.objective).epsilon(1e-9));
        }
    }
}

TEST_CASE("ties resolve to the lexicographically smallest selection") {
    // A flat day: every selection has zero error.
    const Eigen::MatrixXd y = Eigen::MatrixXd::Constant(2, 9, 0.5);
    CHECK(optimal_breakpoints(y, 4).points == std::vector<int>{0, 1, 2, 8});
    const Eigen::MatrixXd v = testing::row({0, 1, 2, 3, 2, 1, 0});
    CHECK(optimal_breakpoints(v, 3).points == std::vector<int>{0, 3, 6});
}

TEST_CASE("objective never rises with more points") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXd y = testing::random_day(rng, 4, 25);
        double last = INFINITY;
        for (int r = 2; r <= 25; ++r) {
            const double o = optimal_breakpoints(y, r).objective;
            CHECK(o <= last + 1e-12);
            last = o;
        }
        CHECK(last == 0.0);
    }
}

TEST_CASE("greedy keeps the worst day error falling") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> ndays(2, 8), ravg(4, 14);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<DayMatrix> days;
        const int n = ndays(rng);
        for (int d = 0; d < n; ++d) days.push_back({d, testing::random_day(rng, 2, 25)});
        const int r_avg = ravg(rng);
        const auto ad = allocate_rtps(days, r_avg, 3, AllocationMode::Adaptive);
        const auto eq = allocate_rtps(days, r_avg, 3, AllocationMode::Equal);
        for (std::size_t i = 1; i < ad.max_error_trace.size(); ++i)
            CHECK(ad.max_error_trace[i] <= ad.max_error_trace[i - 1] + 1e-12);
        auto worst = [](const AllocationResult& a) {
            double m = 0;
            for (const auto& s : a.selections) m = std::max(m, s.objective);
            return m;
        };
        CHECK(worst(ad) <= worst(eq) + 1e-12);
        CHECK(ad.max_error_trace.back() == doctest::Approx(worst(ad)));
        int total = 0;
        for (const auto& s : ad.selections) {
            total += s.count();
            int hours = 0;
            for (int d : s.durations) hours += d;
            CHECK(hours == 24);
        }
        CHECK(total == n * r_avg);
    }
}

TEST_CASE("sld decoding reproduces the calendar") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int n_rd = 1 + static_cast<int>(rng() % 6);
        std::vector<int> labels(1 + rng() % 60);
        for (int& l : labels) l = static_cast<int>(rng() % static_cast<unsigned>(n_rd));
        const auto s = map_slds(labels, n_rd);
        s.validate();
        CHECK(s.decode() == labels);
        for (std::size_t i = 1; i < s.blocks.size(); ++i) CHECK(s.blocks[i].rd != s.blocks[i - 1].rd);
    }
}

TEST_CASE("envelope stays below the exact interval cost") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ua(0.0, 0.2), ub(0.0, 50.0), up(0.0, 1.0), ud(0.25, 6.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double a = ua(rng), b = ub(rng), pmax = 50 + 250 * up(rng), dt = ud(rng);
        const int K = 2 + static_cast<int>(rng() % 8);
        const double p0 = pmax * up(rng), p1 = pmax * up(rng);
        const auto v = envelope_cost(a, b, tangent_points(pmax, K), p0, p1, dt);
        const double exact = exact_interval_cost(a, b, p0, p1, dt);
        CHECK(v.total() <= exact + 1e-9 * (1 + exact));
    }
}

TEST_CASE("synthetic years satisfy the dataset invariants") {
    SyntheticOptions opt;
    opt.injected_peaks = 2;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        opt.seed = seed;
        const HourlyDataset ds = synthetic_dataset(opt);
        ds.validate();
        for (std::size_t a = 0; a < ds.areas.size(); ++a)
            CHECK(std::abs(ds.values.row(ds.row(static_cast<int>(a), 0)).maxCoeff() - 1.0) < 1e-12);
        const auto rd = cluster_days(slice_days(ds), 10, find_extreme_days(ds, testing::toy_instance()));
        rd.validate();
    }
    CHECK(synthetic_raw(opt) == synthetic_raw(opt));
}
