#include "vdw/limits.hpp"

#include "vdw/energy.hpp"
#include "vdw/errors.hpp"
#include "vdw/sharp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace vdw {

namespace {

double periodic_distance(double x, double y)
{
    double d = std::fabs(x - y);
    d = std::fmod(d, 2.0);
    return std::min(d, 2.0 - d);
}

// eps times the y-time the orbit spends within eps of each turning point
std::pair<double, double> plateau_times(const EosParams& p, const FirstIntegral& fi, double eps)
{
    EndpointQuadrature q = orbit_quadrature(p, fi, -0.5);
    double psi = q.psi_at_offset(eps);
    double scale = 2.0 * eps / std::numbers::sqrt2;
    return {scale * q.cumulative(End::Left, psi), scale * q.cumulative(End::Right, psi)};
}

double value_on_grid(const ViscousSolution& sol, double x)
{
    const int m = sol.grid_size();
    double t = (x + 1.0) / 2.0 * m;
    int j = std::clamp(static_cast<int>(std::floor(t)), 0, m - 1);
    double w = t - j;
    return (1.0 - w) * sol.grid[j].v + w * sol.grid[j + 1].v;
}

} // namespace

SweepResult run_sweep(const EosParams& p, const Landscape& land, double vbar, double eps_start, double eps_end,
                      double ratio, Orientation orientation, int grid_size)
{
    if (!(vbar > land.alpha0 && vbar < land.beta0))
        throw InfeasibleError("sweep: vbar must lie strictly inside (alpha0, beta0)");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw DomainError("sweep: ratio must lie in (0, 1)");
    if (!(eps_start > 0.0) || !(eps_end > 0.0) || eps_end > eps_start)
        throw DomainError("sweep: need 0 < eps_end <= eps_start");

    SweepResult r;
    r.vbar = vbar;
    r.orientation = orientation;
    std::tie(r.l1, r.l2) = phase_lengths(land, vbar);
    HScaling hs = h_scaling(p, land, vbar);
    double rate1 = hs.c1 / std::numbers::sqrt2, rate2 = hs.c2 / std::numbers::sqrt2;
    r.predicted_C1 = std::min(0.5 * rate1, rate2);
    r.predicted_C2 = std::min(0.5 * rate2, rate1);

    SolveOptions opt;
    opt.orientation = orientation;
    opt.grid_size = grid_size;
    const SharpKind kind = orientation == Orientation::Valley ? SharpKind::SingleValley : SharpKind::SinglePeak;

    CellSolution prev;
    bool have_prev = false;
    for (int k = 0;; ++k) {
        double eps = eps_start * std::pow(ratio, k);
        if (eps < eps_end * (1.0 - 1e-9))
            break;
        CellSolution cs;
        try {
            cs = solve_cells(p, land, vbar, eps, 1, opt, have_prev ? &prev : nullptr);
        } catch (const NoSolutionError& e) {
            r.truncated = true;
            r.warning = e.what();
            break;
        }
        prev = cs;
        have_prev = true;

        ViscousSolution sol = reconstruct_profile(p, vbar, eps, cs.fi, orientation, grid_size, 1, opt.shift);
        SweepRow row;
        row.eps = eps;
        row.sigma = cs.fi.sigma;
        row.lambda = cs.fi.lambda;
        row.z1 = cs.fi.z1;
        row.z2 = cs.fi.z2;
        row.gap1 = std::fabs(cs.fi.z1_gap);
        row.gap2 = std::fabs(cs.fi.z2_gap);
        std::tie(row.eps_T1, row.eps_T2) = plateau_times(p, cs.fi, eps);
        row.residual_period = cs.residual_period;
        row.residual_mass = cs.residual_mass;
        row.k1 = cs.k1;
        row.k2 = cs.k2;
        row.newton_iterations = cs.iterations;
        row.energy = energy_E(p, sol);
        row.energy_grid = energy_paths(p, sol).grid;
        row.excess = energy_excess(p, land, vbar, eps, cs.fi, 1);

        // sharp profile with its plateau centred where the viscous extremum sits
        double centre = eps * opt.shift;
        double plateau = orientation == Orientation::Valley ? r.l1 : r.l2;
        double offset = std::fmod(centre + 1.0 - 0.5 * plateau + 4.0, 2.0);
        SharpProfile sharp = build_profile(p, land, vbar, kind, offset);
        const double band = 5.0 * eps * std::fabs(std::log(eps));
        auto excluded = [&](double x) {
            for (double b : sharp.breakpoints)
                if (periodic_distance(x, b) < band)
                    return true;
            return false;
        };
        double sup = 0.0;
        for (const ProfileSample& s : sol.grid)
            if (!excluded(s.x))
                sup = std::max(sup, std::fabs(s.v - sharp.value_at(std::min(s.x, 1.0 - 1e-15))));
        row.sup_distance = sup;
        for (std::size_t i = 0; i < kProbePoints.size(); ++i) {
            double x = kProbePoints[i];
            row.probe_distance[i] = excluded(x) ? std::numeric_limits<double>::quiet_NaN()
                                                : std::fabs(value_on_grid(sol, x) - sharp.value_at(x));
        }

        SteadyResiduals sr = steady_residuals(p, sol);
        row.checks_passed = std::fabs(row.residual_period) < 1e-8 && std::fabs(row.residual_mass) < 1e-8 &&
                            sr.mean < 1e-8 && sr.in_range && sr.monotonicity_changes == 2;
        r.eps_ladder.push_back(eps);
        r.rows.push_back(row);
    }
    if (r.rows.empty() && !r.truncated)
        throw DomainError("sweep: empty ladder");
    return r;
}

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw InsufficientDataError("least squares: need at least two paired samples");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0))
        throw InsufficientDataError("least squares: abscissae are all equal");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return f;
}

DecayFit fit_decay(const SweepResult& result)
{
    if (result.rows.size() < 4)
        throw InsufficientDataError("decay fit: at least 4 ladder rows required");
    std::set<double> distinct;
    std::vector<double> inv, g1, g2;
    for (const SweepRow& row : result.rows) {
        distinct.insert(row.eps);
        inv.push_back(1.0 / row.eps);
        g1.push_back(std::log(row.gap1));
        g2.push_back(std::log(row.gap2));
    }
    if (distinct.size() < 4)
        throw InsufficientDataError("decay fit: at least 4 distinct eps values required");
    LineFit a = least_squares(inv, g1), b = least_squares(inv, g2);
    return {-a.slope, -b.slope, a.r2, b.r2, result.predicted_C1, result.predicted_C2};
}

LineFit fit_energy_slope(const SweepResult& result)
{
    std::vector<double> x, y;
    for (const SweepRow& row : result.rows) {
        x.push_back(row.eps);
        y.push_back(row.excess);
    }
    return least_squares(x, y);
}

} // namespace vdw
