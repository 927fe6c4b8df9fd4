#include "oracles.hpp"
#include "random_suite.hpp"

#include "rcsfif/rcsfif.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace rcsfif;

TEST(Property, CubicOracleMatchesBruteForceMinimum) {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    int checked = 0;
    for (int k = 0; k < 10000; ++k) {
        const double a3 = coef(rng), a2 = coef(rng), a1 = coef(rng), a0 = coef(rng);
        const double min = oracle::cubic_min_on_halfline(a3, a2, a1, a0);
        if (std::abs(min) <= 1e-9) continue;
        ASSERT_EQ(cubic_nonneg_oracle(a3, a2, a1, a0), min > 0.0)
            << a3 << " " << a2 << " " << a1 << " " << a0;
        ++checked;
    }
    EXPECT_GT(checked, 9900);
}

TEST(Property, AutoSelectedModelsRespectConstraintsOnLongerData) {
    std::uint64_t seed = 900;
    for (auto f : {oracle::Family::Positivity, oracle::Family::Rectangle, oracle::Family::AboveLine,
                   oracle::Family::BelowLine}) {
        const auto st = oracle::run_random_suite(f, 30, seed++, 6, 5, 7);
        EXPECT_GE(st.worst_margin, -1e-9) << oracle::family_name(f) << " " << st.worst_margin_case;
        EXPECT_EQ(st.bound_violations, 0) << oracle::family_name(f) << " " << st.worst_bound_case;
        EXPECT_GT(st.validated, 0) << oracle::family_name(f);
    }
}

TEST(Property, PerturbationBoundHoldsForSignedScaling) {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const auto p = oracle::random_problem(rng, oracle::Family::AboveLine, 4 + k % 3);
        const DataSet d = oracle::to_data(p.data);
        const Partition part = build_partition(d);
        IfsParams params;
        for (std::size_t i = 0; i < d.intervals(); ++i) {
            params.alpha.push_back((2 * unit(rng) - 1) * 0.95 * part.a[i]);
            params.u.push_back(0.1 + unit(rng));
            params.v.push_back(3 * unit(rng));
        }
        const FifModel m = build_model(d, params);
        const double bound = perturbation_bound(m);
        for (const auto& s : sample_attractor(m, 6).points) {
            ASSERT_LE(std::abs(s.y - eval_classical(m, s.x)), bound + 1e-9) << "case " << k;
        }
    }
}

TEST(Property, FunctionalEquationOnRandomModels) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 40; ++k) {
        const auto p = oracle::random_problem(rng, oracle::Family::Positivity, 5);
        const DataSet d = oracle::to_data(p.data);
        const Partition part = build_partition(d);
        IfsParams params;
        for (std::size_t i = 0; i < d.intervals(); ++i) {
            params.alpha.push_back((2 * unit(rng) - 1) * 0.9 * part.a[i]);
            params.u.push_back(0.2 + unit(rng));
            params.v.push_back(2 * unit(rng));
        }
        const FifModel m = build_model(d, params);
        for (int j = 0; j < 20; ++j) {
            const double x = d.first_x() + unit(rng) * (d.last_x() - d.first_x());
            const double theta = (x - d.first_x()) / part.width;
            for (std::size_t i = 0; i < d.intervals(); ++i) {
                const double lhs = eval_point(m, part.map(i, x), 1e-12);
                const double rhs = params.alpha[i] * eval_point(m, x, 1e-12) + eval_q(m, i, theta);
                ASSERT_NEAR(lhs, rhs, 1e-9) << "case " << k;
            }
        }
    }
}

TEST(Property, TensionDrivesTowardsAffineFif) {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 10; ++k) {
        const auto p = oracle::random_problem(rng, oracle::Family::Rectangle, 5);
        const DataSet d = oracle::to_data(p.data);
        const Partition part = build_partition(d);
        std::vector<double> al;
        for (double a : part.a) al.push_back(0.5 * a);
        const auto dist = tension_study(d, al, std::vector<double>(4, 1.0), {0.0, 10.0, 1e3, 1e5, 1e7});
        for (std::size_t j = 1; j < dist.size(); ++j) EXPECT_LE(dist[j], dist[j - 1] + 1e-12);
        EXPECT_LT(dist.back(), 1e-3 * std::max(1.0, dist.front()));
    }
}

TEST(Property, SamplingIsDeterministic) {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 5; ++k) {
        const auto p = oracle::random_problem(rng, oracle::Family::BelowLine, 6);
        const DataSet d = oracle::to_data(p.data);
        const FifModel m = build_model(d, auto_select(d, p.constraint));
        const auto a = io::samples_to_csv(sample_attractor(m, 5).points);
        const auto b = io::samples_to_csv(sample_attractor(build_model(d, m.params()), 5).points);
        EXPECT_EQ(a, b);
    }
}
