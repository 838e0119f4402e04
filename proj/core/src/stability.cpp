#include "vdw/stability.hpp"

#include "vdw/errors.hpp"

#include <cmath>

namespace vdw {

namespace {

void check_state(const EosParams& p, double rho0, double eps_rho)
{
    if (!(rho0 > 0.0) || !(rho0 < 1.0 / p.b))
        throw DomainError("density must satisfy 0 < rho0 < 1/b");
    if (!(eps_rho > 0.0) || !std::isfinite(eps_rho))
        throw DomainError("density viscosity must be positive");
}

} // namespace

double pressure_density_slope(const EosParams& p, double rho0)
{
    double v = 1.0 / rho0;
    return -v * v * pressure_derivative(p, v, 1);
}

double growth_rate(const EosParams& p, double rho0, double eps_rho, int n)
{
    check_state(p, rho0, eps_rho);
    double n2 = static_cast<double>(n) * n;
    double trace = -(eps_rho + 1.0) * n2;
    double det = eps_rho * n2 * n2 + pressure_density_slope(p, rho0) * n2;
    double disc = trace * trace - 4.0 * det;
    if (disc >= 0.0)
        return 0.5 * (trace + std::sqrt(disc));
    return 0.5 * trace;
}

ModeSpectrum unstable_band(const EosParams& p, double rho0, double eps_rho, int n_max)
{
    check_state(p, rho0, eps_rho);
    if (n_max < 0)
        throw DomainError("n_max must be non-negative");
    ModeSpectrum s;
    s.rho0 = rho0;
    s.eps_rho = eps_rho;
    s.pressure_slope = pressure_density_slope(p, rho0);
    s.cutoff = s.pressure_slope < 0.0 ? std::sqrt(-s.pressure_slope / eps_rho) : 0.0;
    s.modes.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        double g = growth_rate(p, rho0, eps_rho, n);
        s.modes.push_back({n, g});
        double n2 = static_cast<double>(n) * n;
        bool det_negative = eps_rho * n2 * n2 + s.pressure_slope * n2 < 0.0;
        if ((g > 0.0) != det_negative)
            s.matches_determinant = false;
        if (g > 0.0)
            s.largest_unstable = n;
    }
    return s;
}

} // namespace vdw
