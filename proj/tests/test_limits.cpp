#include "vdw/energy.hpp"
#include "vdw/errors.hpp"
#include "vdw/limits.hpp"
#include "vdw/maxwell.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace vdw;

namespace {

struct LimitsFixture : ::testing::Test {
    EosParams p;
    Landscape l = construct(p);
    double mid() const { return 0.5 * (l.alpha0 + l.beta0); }
};

} // namespace

TEST(LeastSquares, RecoversExactLine)
{
    LineFit f = least_squares({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.r2, 1.0, 1e-14);
    EXPECT_THROW(least_squares({1}, {1}), InsufficientDataError);
    EXPECT_THROW(least_squares({2, 2, 2}, {1, 2, 3}), InsufficientDataError);
}

TEST_F(LimitsFixture, ShortSweepApproachesMaxwellState)
{
    SweepResult r = run_sweep(p, l, mid(), 0.02, 0.005, 0.8, Orientation::Valley, 4096);
    ASSERT_FALSE(r.truncated);
    ASSERT_EQ(r.rows.size(), 7u);
    EXPECT_GT(r.rows.front().sup_distance, 0.0);
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        const SweepRow &a = r.rows[i - 1], &b = r.rows[i];
        EXPECT_LT(b.eps, a.eps);
        // plain sigma reaches sigma0 to the last bit within a few rungs
        EXPECT_LE(std::fabs(b.sigma - l.sigma0), std::fabs(a.sigma - l.sigma0));
        EXPECT_LT(b.gap1, a.gap1);
        EXPECT_LT(b.gap2, a.gap2);
        EXPECT_LT(b.sup_distance, a.sup_distance);
        EXPECT_TRUE(b.checks_passed);
    }
    DecayFit f = fit_decay(r);
    EXPECT_GT(f.C1, 0.0);
    EXPECT_GT(f.r2_1, 0.99);
    EXPECT_NEAR(f.C1, f.predicted_C1, 0.05 * f.predicted_C1);
    LineFit e = fit_energy_slope(r);
    double S = asymptotic_S(p, l);
    EXPECT_NEAR(e.slope, S, 0.02 * S);
}

TEST_F(LimitsFixture, PeakAndValleyShareMetrics)
{
    SweepResult v = run_sweep(p, l, mid(), 0.03, 0.02, 0.8, Orientation::Valley, 2048);
    SweepResult k = run_sweep(p, l, mid(), 0.03, 0.02, 0.8, Orientation::Peak, 2048);
    ASSERT_EQ(v.rows.size(), k.rows.size());
    for (std::size_t i = 0; i < v.rows.size(); ++i) {
        EXPECT_NEAR(v.rows[i].sup_distance, k.rows[i].sup_distance, 1e-9);
        EXPECT_EQ(v.rows[i].sigma, k.rows[i].sigma);
    }
}

TEST_F(LimitsFixture, InterfaceTimesSumToPeriod)
{
    SweepResult r = run_sweep(p, l, mid(), 0.01, 0.01, 0.8, Orientation::Valley, 4096);
    ASSERT_EQ(r.rows.size(), 1u);
    const SweepRow& row = r.rows.front();
    EXPECT_GT(row.eps_T1, 0.0);
    EXPECT_GT(row.eps_T2, 0.0);
    EXPECT_LT(row.eps_T1 + row.eps_T2, 2.0);
    EXPECT_THROW(fit_decay(r), InsufficientDataError);
}

TEST_F(LimitsFixture, InputChecks)
{
    EXPECT_THROW(run_sweep(p, l, 2.0 * l.beta0, 0.02, 0.01, 0.8, Orientation::Valley), InfeasibleError);
    EXPECT_THROW(run_sweep(p, l, mid(), 0.02, 0.01, 1.2, Orientation::Valley), DomainError);
    EXPECT_THROW(run_sweep(p, l, mid(), 0.01, 0.02, 0.8, Orientation::Valley), DomainError);
}
