#include "vdw/energy.hpp"

#include "vdw/errors.hpp"
#include "vdw/maxwell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace vdw {

namespace {

const double kSqrt2 = std::numbers::sqrt2;

double curvature_W(const EosParams& p, double v)
{
    return -pressure_derivative(p, v, 1);
}

double root_integral(const EosParams& p, const FirstIntegral& fi)
{
    return orbit_quadrature(p, fi, 0.5).moment(0);
}

void require_zero_mean(const std::vector<double>& x, std::size_t n, double scale, const char* who)
{
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        sum += x[j];
    double mean = sum / static_cast<double>(n);
    if (std::fabs(mean) > 1e-8 * scale)
        throw MeanViolationError(std::string(who) + ": samples must have zero mean (mean = " + std::to_string(mean) +
                                 ")");
}

} // namespace

double functional_G(const EosParams& p, double vbar, const std::vector<double>& V, double eps)
{
    const std::size_t m = V.size();
    if (m < 4)
        throw DomainError("functional_G: at least 4 samples required");
    require_zero_mean(V, m, 1.0, "functional_G");
    const double dx = 2.0 / static_cast<double>(m);
    double bulk = 0.0, dirichlet = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        bulk += double_well_H(p, vbar, V[j]);
        double d = (V[(j + 1) % m] - V[j]) / dx;
        dirichlet += d * d;
    }
    return dx * (bulk + 0.5 * eps * eps * dirichlet);
}

EnergyPaths energy_paths(const EosParams& p, const ViscousSolution& sol)
{
    const FirstIntegral& fi = sol.first_integral;
    EnergyPaths e{};
    e.closed = 2.0 * (-fi.sigma * sol.vbar + fi.lambda);
    if (sol.cells > 0)
        e.closed += 2.0 * kSqrt2 * sol.epsilon * sol.cells * root_integral(p, fi);

    const int m = sol.grid_size();
    const double dy = sol.dy();
    auto v = [&](int j) { return sol.grid[((j % m) + m) % m].v; };
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
        double vy = (8.0 * (v(j + 1) - v(j - 1)) - (v(j + 2) - v(j - 2))) / (12.0 * dy);
        sum += potential_W(p, sol.vbar, v(j)) + 0.5 * vy * vy;
    }
    e.grid = sol.epsilon * dy * sum;
    return e;
}

double energy_E(const EosParams& p, const ViscousSolution& sol)
{
    EnergyPaths e = energy_paths(p, sol);
    double scale = std::max({std::fabs(e.closed), std::fabs(e.grid), 1e-300});
    if (std::fabs(e.closed - e.grid) > 1e-6 * scale && std::fabs(e.closed - e.grid) > 1e-14)
        throw CrossCheckError("energy: closed form " + std::to_string(e.closed) + " and grid quadrature " +
                              std::to_string(e.grid) + " disagree beyond 1e-6 relative");
    return e.closed;
}

double energy_leading(const EosParams& p, const Landscape& land, double vbar)
{
    return 2.0 * (-land.sigma0 * vbar + maxwell_level(p, land, vbar));
}

double energy_excess(const EosParams& p, const Landscape&, double vbar, double eps, const FirstIntegral& fi,
                     int cells)
{
    return 2.0 * (-fi.d_sigma * vbar + fi.d_lambda) + 2.0 * kSqrt2 * eps * cells * root_integral(p, fi);
}

EnergyGradient energy_gradient(const EosParams& p, double vbar, double eps, const FirstIntegral& fi, int cells)
{
    PeriodIntegrals I = period_integrals(p, fi);
    return {-2.0 * vbar + 2.0 * eps * cells * I.I1, 2.0 - 2.0 * eps * cells * I.I0};
}

double asymptotic_S(const EosParams& p, const Landscape& land)
{
    // at the Maxwell state both ends are double zeros of the integrand base
    EndpointModel left{land.alpha0, [p, z = land.alpha0](double e) { return tangent_gap(p, z, e); }};
    EndpointModel right{land.beta0, [p, z = land.beta0](double e) { return tangent_gap(p, z, -e); }};
    EndpointQuadrature q(std::move(left), std::move(right), 0.5);
    return 2.0 * kSqrt2 * q.moment(0);
}

double second_variation(const EosParams& p, const ViscousSolution& sol, const std::vector<double>& eta,
                        const std::vector<double>& eta_y)
{
    const int m = sol.grid_size();
    if (!(eta.size() == static_cast<std::size_t>(m) || eta.size() == static_cast<std::size_t>(m) + 1) ||
        eta_y.size() < static_cast<std::size_t>(m))
        throw DomainError("second_variation: eta must hold grid_size or grid_size + 1 samples");
    double peak = 0.0;
    for (int j = 0; j < m; ++j)
        peak = std::max(peak, std::fabs(eta[j]));
    require_zero_mean(eta, m, peak, "second_variation");
    double sum = 0.0;
    for (int j = 0; j < m; ++j)
        sum += eta_y[j] * eta_y[j] + curvature_W(p, sol.grid[j].v) * eta[j] * eta[j];
    return sol.dy() * sum;
}

double second_variation(const EosParams& p, const ViscousSolution& sol, const std::vector<double>& eta)
{
    const int m = sol.grid_size();
    if (!(eta.size() == static_cast<std::size_t>(m) || eta.size() == static_cast<std::size_t>(m) + 1))
        throw DomainError("second_variation: eta must hold grid_size or grid_size + 1 samples");
    std::vector<double> eta_y(m);
    for (int j = 0; j < m; ++j)
        eta_y[j] = (eta[(j + 1) % m] - eta[(j + m - 1) % m]) / (2.0 * sol.dy());
    return second_variation(p, sol, eta, eta_y);
}

VariationProbe destabilizing_probe(const EosParams& p, const ViscousSolution& sol)
{
    const int m = sol.grid_size();
    if (sol.cells < 2)
        throw DomainError("destabilizing_probe: needs a solution with at least two cells");
    if (m % sol.cells != 0)
        throw DomainError("destabilizing_probe: grid_size must be a multiple of the cell count");
    const double dy = sol.dy();
    const int nc = m / sol.cells;
    double start = sol.shift / dy;
    int j0 = static_cast<int>(std::lround(start));
    if (std::fabs(start - j0) > 1e-9)
        throw DomainError("destabilizing_probe: the extremum at -1/eps + shift must fall on a grid node");
    j0 = ((j0 % m) + m) % m;
    auto at = [&](int k) { return ((j0 + k) % m + m) % m; };

    // eta1: bump of height 1 at y0 and a mean-cancelling bump at the opposite extremum
    const double width = 0.1 * nc * dy;
    const double k = 2.0 * std::numbers::pi / width;
    std::vector<double> up(m, 0.0), up_y(m, 0.0), down(m, 0.0), down_y(m, 0.0);
    auto bump = [&](double center, std::vector<double>& b, std::vector<double>& b_y) {
        for (int j = 0; j < m; ++j) {
            double d = (j - center) * dy;
            double period = m * dy;
            d -= period * std::round(d / period);
            if (std::fabs(d) < 0.5 * width) {
                b[j] = 0.5 * (1.0 + std::cos(k * d));
                b_y[j] = -0.5 * k * std::sin(k * d);
            }
        }
    };
    bump(j0, up, up_y);
    bump(j0 + 0.5 * nc, down, down_y);
    double s_up = 0.0, s_down = 0.0;
    for (int j = 0; j < m; ++j) {
        s_up += up[j];
        s_down += down[j];
    }
    const double c = s_up / s_down;
    std::vector<double> e1(m), e1_y(m);
    for (int j = 0; j < m; ++j) {
        e1[j] = up[j] - c * down[j];
        e1_y[j] = up_y[j] - c * down_y[j];
    }

    VariationProbe pr;
    double j0_sum = 0.0, b_sum = 0.0, j1_sum = 0.0;
    for (int kk = 0; kk <= nc; ++kk) {
        const ProfileSample& s = sol.grid[at(kk)];
        double w = (kk == 0 || kk == nc) ? 0.5 : 1.0;
        double curv = curvature_W(p, s.v);
        j0_sum += w * (s.d2v * s.d2v + curv * s.dv * s.dv);
        b_sum += w * (s.d2v * e1_y[at(kk)] + curv * s.dv * e1[at(kk)]);
    }
    for (int j = 0; j < m; ++j)
        j1_sum += e1_y[j] * e1_y[j] + curvature_W(p, sol.grid[j].v) * e1[j] * e1[j];
    const ProfileSample& first = sol.grid[at(0)];
    const ProfileSample& last = sol.grid[at(nc)];
    pr.j_kernel = last.dv * last.d2v - first.dv * first.d2v;
    pr.j_kernel_grid = dy * j0_sum;
    pr.coupling = dy * b_sum;
    pr.j_bump = dy * j1_sum;
    pr.v_yy_at_start = sol.grid[j0].d2v;
    pr.t = pr.j_bump > 0.0 ? -pr.coupling / pr.j_bump : (pr.coupling > 0.0 ? -1.0 : 1.0);
    pr.j_total = pr.j_kernel + 2.0 * pr.t * pr.coupling + pr.t * pr.t * pr.j_bump;
    pr.j_total_grid = pr.j_kernel_grid + 2.0 * pr.t * pr.coupling + pr.t * pr.t * pr.j_bump;

    pr.eta.assign(m, 0.0);
    pr.eta_y.assign(m, 0.0);
    for (int kk = 0; kk <= nc; ++kk) {
        const ProfileSample& s = sol.grid[at(kk)];
        // v_y vanishes at both extremes; v_yy is one-sided there
        double w = (kk == 0 || kk == nc) ? 0.5 : 1.0;
        pr.eta[at(kk)] = s.dv;
        pr.eta_y[at(kk)] = w * s.d2v;
    }
    for (int j = 0; j < m; ++j) {
        pr.eta[j] += pr.t * e1[j];
        pr.eta_y[j] += pr.t * e1_y[j];
    }
    return pr;
}

EnergyReport energy_ordering(const EosParams& p, const Landscape& land, double vbar, double eps, int max_cells,
                             int grid_size)
{
    if (max_cells < 1)
        throw DomainError("energy_ordering: max_cells must be at least 1");
    EnergyReport r;
    r.epsilon = eps;
    r.vbar = vbar;
    r.leading = energy_leading(p, land, vbar);
    r.slope_S = asymptotic_S(p, land);

    ViscousSolution flat = constant_solution(p, vbar, eps, grid_size);
    double e_flat = energy_E(p, flat);
    r.comparisons.push_back({"constant", 0, true, e_flat, e_flat - r.leading});

    for (int n = 1; n <= max_cells; ++n) {
        EnergyEntry e{"N=" + std::to_string(n), n, false, 0.0, 0.0};
        try {
            SolveOptions opt;
            opt.grid_size = grid_size - grid_size % n;
            ViscousSolution sol = solve_2N(p, land, vbar, eps, n, opt);
            e.energy = energy_E(p, sol);
            e.excess = energy_excess(p, land, vbar, eps, sol.first_integral, n);
            e.solved = true;
        } catch (const NoSolutionError&) {
        } catch (const InfeasibleError&) {
        }
        r.comparisons.push_back(e);
    }

    const EnergyEntry& one = r.comparisons[1];
    r.e_value = one.solved ? one.energy : e_flat;
    r.residual = one.solved ? (one.excess - eps * r.slope_S) : (e_flat - r.leading - eps * r.slope_S);
    r.single_cell_minimal = one.solved;
    for (const EnergyEntry& e : r.comparisons)
        if (e.cells != 1 && e.solved && !(one.energy < e.energy))
            r.single_cell_minimal = false;
    return r;
}

} // namespace vdw
