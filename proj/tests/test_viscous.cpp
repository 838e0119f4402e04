#include "oracles.hpp"

#include "vdw/errors.hpp"
#include "vdw/maxwell.hpp"
#include "vdw/viscous.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

using namespace vdw;

namespace {

struct ViscousFixture : ::testing::Test {
    EosParams p;
    Landscape l = construct(p);
    oracle::Gas g;
    double mid() const { return 0.5 * (l.alpha0 + l.beta0); }

    // a pair with both gaps of order one
    std::pair<double, double> generic_pair(double vbar) const
    {
        IsobarRoots r = solve_isobar(p, l, l.sigma0);
        auto level = [&](double v) { return potential_W(p, vbar, v) + l.sigma0 * v; };
        double low = std::max(level(r.alpha_sigma), level(r.beta_sigma));
        return {l.sigma0, low + 0.3 * (level(r.xi_sigma) - low)};
    }

    // open midpoint rule in the sine variable with an independent f
    std::pair<double, double> oracle_integrals(double vbar, double sigma, double lambda, double z1, double z2) const
    {
        const int n = 40000;
        double c = 0.5 * (z1 + z2), r = 0.5 * (z2 - z1);
        double i0 = 0.0, i1 = 0.0;
        for (int k = 0; k < n; ++k) {
            double t = -0.5 * std::numbers::pi + std::numbers::pi * (k + 0.5) / n;
            double s = c + r * std::sin(t);
            double f = oracle::phi(g, s) - oracle::phi(g, vbar) + sigma * s - lambda;
            double w = r * std::cos(t) / std::sqrt(2.0 * f);
            i0 += w;
            i1 += w * s;
        }
        double h = std::numbers::pi / n;
        return {i0 * h, i1 * h};
    }
};

} // namespace

TEST_F(ViscousFixture, PotentialNormalizationAndDerivatives)
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> vol(0.4, 8.0);
    double vbar = mid();
    EXPECT_EQ(potential_W(p, vbar, vbar), 0.0);
    for (int i = 0; i < 100; ++i) {
        double v = vol(rng), h = 1e-5 * v;
        double d1 = (potential_W(p, vbar, v + h) - potential_W(p, vbar, v - h)) / (2 * h);
        double d2 = (potential_W(p, vbar, v + h) - 2 * potential_W(p, vbar, v) + potential_W(p, vbar, v - h)) / (h * h);
        EXPECT_NEAR(d1, -pressure(p, v), 1e-8 * std::max(1.0, std::fabs(d1)));
        EXPECT_NEAR(d2, -pressure_derivative(p, v, 1), 1e-4 * std::max(1.0, std::fabs(d2)));
    }
}

TEST_F(ViscousFixture, DoubleWellIdentities)
{
    double vbar = mid();
    EXPECT_EQ(double_well_H(p, vbar, 0.0), 0.0);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> shift(-1.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        double V = shift(rng), h = 1e-6;
        double fd = (double_well_H(p, vbar, V + h) - double_well_H(p, vbar, V - h)) / (2 * h);
        EXPECT_NEAR(fd, pressure(p, vbar) - pressure(p, V + vbar), 1e-7);
        EXPECT_NEAR(double_well_H(p, vbar, V), potential_W(p, vbar, V + vbar) + pressure(p, vbar) * V, 1e-10);
    }
    EXPECT_THROW(double_well_H(p, vbar, p.b - vbar), DomainError);
}

TEST_F(ViscousFixture, GenericOrbitSignPattern)
{
    double vbar = mid();
    auto [sigma, lambda] = generic_pair(vbar);
    FirstIntegral fi = orbit_from_pair(p, l, vbar, sigma, lambda);
    EXPECT_NEAR(first_integral_f(p, vbar, sigma, lambda, fi.z1), 0.0, 1e-12);
    EXPECT_NEAR(first_integral_f(p, vbar, sigma, lambda, fi.z2), 0.0, 1e-12);
    for (int k = 1; k < 1000; ++k) {
        double s = fi.z1 + (fi.z2 - fi.z1) * k / 1000.0;
        EXPECT_GT(first_integral_f(p, vbar, sigma, lambda, s), 0.0);
    }
    EXPECT_LT(first_integral_f(p, vbar, sigma, lambda, fi.z1 - 1e-3), 0.0);
    EXPECT_LT(first_integral_f(p, vbar, sigma, lambda, fi.z2 + 1e-3), 0.0);
    auto tp = turning_points(p, vbar, sigma, lambda);
    EXPECT_DOUBLE_EQ(tp.first, fi.z1);
    EXPECT_DOUBLE_EQ(tp.second, fi.z2);
}

TEST_F(ViscousFixture, InadmissiblePairNamesTheCondition)
{
    double vbar = mid();
    IsobarRoots r = solve_isobar(p, l, l.sigma0);
    double level = potential_W(p, vbar, r.alpha_sigma) + l.sigma0 * r.alpha_sigma;
    try {
        orbit_from_pair(p, l, vbar, l.sigma0, level - 0.01);
        FAIL() << "expected InadmissiblePairError";
    } catch (const InadmissiblePairError& e) {
        EXPECT_FALSE(e.failed_condition().empty());
    }
    EXPECT_THROW(orbit_from_pair(p, l, vbar, l.sigma_hi + 0.1, 0.0), OutOfBandError);
}

TEST_F(ViscousFixture, HilltopLimitMergesTurningPoints)
{
    double vbar = mid();
    IsobarRoots r = solve_isobar(p, l, l.sigma0);
    double top = potential_W(p, vbar, r.xi_sigma) + l.sigma0 * r.xi_sigma;
    FirstIntegral fi = orbit_from_pair(p, l, vbar, l.sigma0, top - 1e-10);
    EXPECT_NEAR(fi.z1, r.xi_sigma, 1e-3);
    EXPECT_NEAR(fi.z2, r.xi_sigma, 1e-3);
}

TEST_F(ViscousFixture, PeriodIntegralsMatchIndependentQuadrature)
{
    double vbar = mid();
    auto [sigma, lambda] = generic_pair(vbar);
    FirstIntegral fi = orbit_from_pair(p, l, vbar, sigma, lambda);
    PeriodIntegrals pi = period_integrals(p, fi);
    auto [o0, o1] = oracle_integrals(vbar, sigma, lambda, fi.z1, fi.z2);
    EXPECT_NEAR(pi.I0, o0, 1e-7 * o0);
    EXPECT_NEAR(pi.I1, o1, 1e-7 * o1);
    EXPECT_GT(pi.I1 / pi.I0, fi.z1);
    EXPECT_LT(pi.I1 / pi.I0, fi.z2);
}

TEST_F(ViscousFixture, PeriodIntegralsConvergeUnderRefinement)
{
    double vbar = mid();
    auto [sigma, lambda] = generic_pair(vbar);
    FirstIntegral fi = orbit_from_pair(p, l, vbar, sigma, lambda);
    double coarse = orbit_quadrature(p, fi, -0.5, 1e-10).moment(0);
    double fine = orbit_quadrature(p, fi, -0.5, 1e-13).moment(0);
    EXPECT_NEAR(coarse, fine, 1e-10 * fine);
}

TEST_F(ViscousFixture, DeepEndsAgreeWithDirectQuadrature)
{
    double vbar = mid();
    for (auto [a, b] : {std::pair{-200.0, -160.0}, std::pair{-250.0, -40.0}, std::pair{-170.0, -290.0}}) {
        FirstIntegral direct = orbit_from_log_gaps(p, l, vbar, a, b, -1e4);
        FirstIntegral deep = orbit_from_log_gaps(p, l, vbar, a, b, -150.0);
        EXPECT_FALSE(direct.deep1);
        EXPECT_TRUE(deep.deep1);
        PeriodIntegrals x = period_integrals(p, direct), y = period_integrals(p, deep);
        EXPECT_NEAR(x.I0, y.I0, 1e-12 * x.I0);
        EXPECT_NEAR(x.I1, y.I1, 1e-12 * x.I1);
    }
}

TEST_F(ViscousFixture, LogGapsReproducePlainOrbit)
{
    double vbar = mid();
    auto [sigma, lambda] = generic_pair(vbar);
    FirstIntegral a = orbit_from_pair(p, l, vbar, sigma, lambda);
    FirstIntegral b = orbit_from_log_gaps(p, l, vbar, a.log_h1, a.log_h2);
    EXPECT_NEAR(a.sigma, b.sigma, 1e-12);
    EXPECT_NEAR(a.lambda, b.lambda, 1e-12);
    EXPECT_NEAR(a.z1, b.z1, 1e-10);
    EXPECT_NEAR(a.z2, b.z2, 1e-10);
}

TEST_F(ViscousFixture, TrivialityThresholdMatchesScan)
{
    double best = 0.0;
    for (int k = 0; k <= 200000; ++k) {
        double v = l.alpha + (l.beta - l.alpha) * k / 200000.0;
        best = std::max(best, oracle::dp(g, v));
    }
    EXPECT_NEAR(max_spinodal_slope(p, l), best, 1e-9);
    EXPECT_NEAR(triviality_threshold(p, l), std::sqrt(best) / std::numbers::pi, 1e-9);
}

TEST_F(ViscousFixture, SolvedCellConditions)
{
    SolveOptions opt;
    opt.grid_size = 65536;
    ViscousSolution sol = solve_two_interface(p, l, mid(), 0.02, opt);
    EXPECT_LT(std::fabs(sol.residual_period), 1e-8);
    EXPECT_LT(std::fabs(sol.residual_mass), 1e-8);
    PeriodIntegrals pi = period_integrals(p, sol.first_integral);
    EXPECT_NEAR(0.02 * pi.I0, 1.0, 1e-8);
    EXPECT_NEAR(0.02 * pi.I1, mid(), 1e-8);
    SteadyResiduals r = steady_residuals(p, sol);
    EXPECT_LT(r.first_integral, 1e-6);
    EXPECT_LT(r.mean, 1e-8);
    EXPECT_LT(r.periodicity, 1e-12);
    EXPECT_TRUE(r.in_range);
    EXPECT_EQ(r.monotonicity_changes, 2);
    EXPECT_EQ(sol.kind, ProfileKind::SingleValley);
}

TEST_F(ViscousFixture, OdeResidualIsSecondOrder)
{
    SolveOptions opt;
    opt.grid_size = 4096;
    ViscousSolution coarse = solve_two_interface(p, l, mid(), 0.05, opt);
    opt.grid_size = 8192;
    ViscousSolution fine = solve_two_interface(p, l, mid(), 0.05, opt);
    double ratio = steady_residuals(p, coarse).ode / steady_residuals(p, fine).ode;
    EXPECT_GT(ratio, 3.5);
    EXPECT_LT(ratio, 4.5);
}

TEST_F(ViscousFixture, OrientationPlacesExtremum)
{
    SolveOptions opt;
    opt.grid_size = 4096;
    opt.orientation = Orientation::Peak;
    ViscousSolution peak = solve_two_interface(p, l, mid(), 0.05, opt);
    auto top = std::max_element(peak.grid.begin(), peak.grid.end(),
                                [](const ProfileSample& a, const ProfileSample& b) { return a.v < b.v; });
    EXPECT_NEAR(top->y, 0.0, 2.0 * peak.dy());
    EXPECT_EQ(peak.kind, ProfileKind::SinglePeak);
}

TEST_F(ViscousFixture, HCoordinatesRoundTrip)
{
    // both gaps must stay far above the roundoff of the (sigma, lambda)
    // offsets they are recomputed from
    for (auto [vbar, eps] : {std::pair{mid(), 0.1}, std::pair{2.2, 0.08}, std::pair{2.5, 0.05}}) {
        CellSolution cs = solve_cells(p, l, vbar, eps, 1);
        HCoordinates h = h_coordinates(p, l, vbar, eps, cs.fi);
        EXPECT_NEAR(h.k1, cs.k1, 1e-8 * std::max(1.0, std::fabs(cs.k1))) << vbar << " " << eps;
        EXPECT_NEAR(h.k2, cs.k2, 1e-8 * std::max(1.0, std::fabs(cs.k2))) << vbar << " " << eps;
    }
}

TEST_F(ViscousFixture, MoreCellsGiveShallowerOrbits)
{
    SolveOptions opt;
    opt.grid_size = 4096;
    ViscousSolution one = solve_2N(p, l, mid(), 0.02, 1, opt);
    ViscousSolution same = solve_two_interface(p, l, mid(), 0.02, opt);
    EXPECT_EQ(one.first_integral.sigma, same.first_integral.sigma);
    EXPECT_EQ(one.first_integral.lambda, same.first_integral.lambda);
    ViscousSolution two = solve_2N(p, l, mid(), 0.02, 2, opt);
    EXPECT_LT(std::fabs(0.02 * 2 * period_integrals(p, two.first_integral).I0 - 1.0), 1e-8);
    EXPECT_GT(two.first_integral.z1 - l.alpha0, one.first_integral.z1 - l.alpha0);
    EXPECT_GT(l.beta0 - two.first_integral.z2, l.beta0 - one.first_integral.z2);
    EXPECT_EQ(steady_residuals(p, two).monotonicity_changes, 4);
}

TEST_F(ViscousFixture, AboveThresholdOnlyConstantState)
{
    double eps = 1.1 * triviality_threshold(p, l);
    EXPECT_THROW(solve_two_interface(p, l, mid(), eps), NoSolutionError);
    ViscousSolution c = constant_solution(p, mid(), eps, 256);
    SteadyResiduals r = steady_residuals(p, c);
    EXPECT_EQ(r.ode, 0.0);
    EXPECT_EQ(r.first_integral, 0.0);
    EXPECT_LT(r.mean, 1e-14);
    EXPECT_EQ(r.monotonicity_changes, 0);
}

TEST_F(ViscousFixture, InputChecks)
{
    EXPECT_THROW(solve_cells(p, l, mid(), -0.1, 1), DomainError);
    EXPECT_THROW(solve_cells(p, l, mid(), 0.02, 0), DomainError);
    EXPECT_THROW(solve_cells(p, l, 2.0 * l.beta0, 0.02, 1), InfeasibleError);
    EXPECT_THROW(constant_solution(p, mid(), 0.1, 10), DomainError);
}
