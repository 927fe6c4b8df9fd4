#include "oracles.hpp"

#include "rcsfif/analysis.hpp"
#include "rcsfif/scenarios.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace rcsfif;

TEST(PerturbationBound, HandComputedForPositiveRowB) {
    const auto& s = find_scenario("fig1b");
    const FifModel m = build_model(s.data(), s.params);
    // |y| = 5, M = 5 + max(0.1, 5), s = min(u + v/4) = 0.1 + 0.02, h = 0.4,
    // |d| = 15.8095, max(|d_1|, |d_N|) = 15.8095, |alpha| = 0.31, |u| = 0.1, |v| = 0.1.
    const double M = 10.0;
    const double braces = 0.1 * M + ((0.3 + 0.1) * M + 0.1 * (0.4 * 15.8095 + 1.0 * 15.8095)) / 4.0;
    const double want = 0.31 / (0.12 * (1 - 0.31)) * braces;
    EXPECT_NEAR(perturbation_bound(m), want, 1e-12);
}

TEST(PerturbationBound, ZeroExactlyWithoutScaling) {
    for (const auto& s : scenarios()) {
        const FifModel m = build_model(s.data(), s.params);
        EXPECT_EQ(perturbation_bound(m) == 0.0, m.alpha_max() == 0.0) << s.name;
    }
}

TEST(PerturbationBound, MonotoneInScaling) {
    const DataSet d = reference_line_data();
    double prev = 0.0;
    for (int k = 0; k <= 20; ++k) {
        const double f = k / 20.0;
        const FifModel m = build_model(d, IfsParams{{0.17 * f, -0.2 * f, 0.4 * f}, {0.1, 0.1, 0.1},
                                                    {3.8, 0.1, 0.1}});
        const double b = perturbation_bound(m);
        EXPECT_GE(b, prev);
        prev = b;
    }
}

TEST(PerturbationBound, TotalAddsClassicalTerm) {
    const auto& s = find_scenario("fig1g");
    const FifModel m = build_model(s.data(), s.params);
    EXPECT_EQ(total_error_bound(m, 0.0), perturbation_bound(m));
    EXPECT_NEAR(total_error_bound(m, 2.0, 0.5), 0.5 * 2.0 * std::pow(2.6, 3) * 0.5 + perturbation_bound(m),
                1e-12);
    EXPECT_THROW((void)total_error_bound(m, -1.0), Error);
    EXPECT_THROW((void)total_error_bound(m, 1.0, -1.0), Error);
}

TEST(PerturbationBound, DominatesSampledGapOnScenarios) {
    for (const auto& s : scenarios()) {
        const FifModel m = build_model(s.data(), s.params);
        const auto samples = sample_attractor(m, 8);
        double gap = 0.0;
        for (const auto& p : samples.points) gap = std::max(gap, std::abs(p.y - eval_classical(m, p.x)));
        EXPECT_LE(gap, perturbation_bound(m) + 1e-9) << s.name;
        EXPECT_LE(gap, m.value_gap_bound() + 1e-12) << s.name;
    }
}

TEST(Margin, ReportsMinimizer) {
    const auto& s = find_scenario("fig1d");
    const FifModel m = build_model(s.data(), s.params);
    const auto r = empirical_margin(m, s.constraint, 8);
    EXPECT_EQ(r.depth, 8);
    EXPECT_EQ(r.samples, attractor_size(4, 8));
    EXPECT_NEAR(r.margin, constraint_margin(s.constraint, r.x, r.y), 0.0);
    EXPECT_LT(r.margin, 0.0);
    EXPECT_LT(r.x, 0.4);
}

TEST(SupGrid, IncludesKnots) {
    const auto g = sup_grid(reference_positive_data());
    // 0.4 = 102/255 is already a grid point.
    EXPECT_EQ(g.size(), 257u);
    EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
    for (double k : {0.0, 0.4, 0.75, 1.0}) {
        EXPECT_NE(std::find(g.begin(), g.end(), k), g.end());
    }
}

TEST(Tension, ZeroScalingApproachesPiecewiseLinear) {
    const DataSet d = reference_positive_data();
    const std::vector<double> v{0.0, 1.0, 10.0, 1e3, 1e5};
    const auto dist = tension_study(d, {0, 0, 0}, {0.1, 0.1, 0.1}, v);
    ASSERT_EQ(dist.size(), v.size());
    for (std::size_t k = 1; k < dist.size(); ++k) EXPECT_LE(dist[k], dist[k - 1] + 1e-12);
    EXPECT_LT(dist.back(), 1e-3);
}

TEST(Tension, CubicNumeratorEntryMatchesDirectDistance) {
    const DataSet d = reference_positive_data();
    const std::vector<double> al{0.2, 0.31, 0.23};
    const auto dist = tension_study(d, al, {0.1, 0.1, 0.1}, {0.0});
    const FifModel m = build_model(d, IfsParams{al, {0.1, 0.1, 0.1}, {0, 0, 0}});
    double sup = 0.0;
    for (double x : sup_grid(d)) {
        sup = std::max(sup, std::abs(eval_point(m, x, 1e-12) - eval_affine_fif(m, x, 1e-12)));
    }
    EXPECT_NEAR(dist[0], sup, 1e-11);
}

TEST(Tension, PositiveRowBScalingLimit) {
    const auto dist = tension_study(reference_positive_data(), {0.2, 0.31, 0.23}, {0.1, 0.1, 0.1},
                                    {1.0, 1e2, 1e4, 1e6});
    for (std::size_t k = 1; k < dist.size(); ++k) EXPECT_LE(dist[k], dist[k - 1] + 1e-12);
    EXPECT_LT(dist.back(), 1e-3);
}

TEST(Tension, RejectsUnorderedValues) {
    EXPECT_THROW((void)tension_study(reference_positive_data(), {0, 0, 0}, {1, 1, 1}, {1.0, 1.0}), Error);
    EXPECT_THROW((void)tension_study(reference_positive_data(), {0, 0, 0}, {1, 1, 1}, {-1.0}), Error);
}
