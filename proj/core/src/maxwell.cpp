#include "vdw/maxwell.hpp"

#include "vdw/errors.hpp"
#include "vdw/roots.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vdw {

Landscape construct(const EosParams& p)
{
    validate(p);
    double tc = critical_temperature(p);
    if (!(p.theta < tc))
        throw SupercriticalError("temperature must be subcritical: 0 < theta < theta_c = " + std::to_string(tc));
    if (tc - p.theta < 1e-8 * tc)
        throw SupercriticalError("temperature within 1e-8 of theta_c: phase landscape is degenerate");

    Spinodal s = spinodal_points(p);
    Landscape land;
    land.alpha = s.alpha;
    land.beta = s.beta;
    land.sigma_lo = pressure(p, s.alpha);
    land.sigma_hi = pressure(p, s.beta);
    Companion c = companion_points(p, s);
    land.alpha_bar = c.alpha_bar;
    land.beta_bar = c.beta_bar;

    // A(sigma) is strictly decreasing with A'(sigma) = -(beta_sigma - alpha_sigma).
    double lo = std::max(land.sigma_lo, 0.0);
    double delta = 1e-9 * (land.sigma_hi - lo);
    auto fd = [&](double sigma) {
        IsobarRoots r = solve_isobar(p, land, sigma);
        double area = -(potential_abs(p, r.beta_sigma) - potential_abs(p, r.alpha_sigma)) -
                      sigma * (r.beta_sigma - r.alpha_sigma);
        return std::pair{area, -(r.beta_sigma - r.alpha_sigma)};
    };
    double sigma0;
    try {
        sigma0 = find_root(fd, lo + delta, land.sigma_hi - delta, 0.5 * (lo + land.sigma_hi), false,
                           RootOptions{1e-15, 1e-15, 400});
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(std::string("Maxwell construction did not converge: ") + e.what(), e.residual());
    }
    IsobarRoots r = solve_isobar(p, land, sigma0);
    land.sigma0 = sigma0;
    land.alpha0 = r.alpha_sigma;
    land.beta0 = r.beta_sigma;
    land.lambda0_abs = potential_abs(p, land.alpha0) + sigma0 * land.alpha0;
    return land;
}

double equal_area_residual(const EosParams& p, const Landscape& land, double sigma)
{
    IsobarRoots r = solve_isobar(p, land, sigma);
    return -(potential_abs(p, r.beta_sigma) - potential_abs(p, r.alpha_sigma)) -
           sigma * (r.beta_sigma - r.alpha_sigma);
}

double maxwell_level(const EosParams& p, const Landscape& land, double vbar)
{
    return land.lambda0_abs - potential_abs(p, vbar);
}

RegionLabel classify(const EosParams& p, const Landscape& land, double v)
{
    if (!(v > p.b))
        throw DomainError("classify: volume must exceed b");
    const double snap = 1e-10;
    auto at = [&](double boundary) { return std::fabs(v - boundary) < snap; };
    bool in_maxwell = v > land.alpha0 && v < land.beta0 && !at(land.alpha0) && !at(land.beta0);
    if (at(land.alpha0) || at(land.beta0))
        return {Region::Stable, false};
    if (at(land.alpha) || at(land.beta))
        return {Region::Metastable, true};
    if (v > land.alpha && v < land.beta)
        return {Region::Unstable, true};
    if (in_maxwell)
        return {Region::Metastable, true};
    return {Region::Stable, false};
}

const char* to_string(Region r)
{
    switch (r) {
    case Region::Unstable:
        return "unstable";
    case Region::Metastable:
        return "metastable";
    case Region::Stable:
        return "stable";
    }
    return "?";
}

} // namespace vdw
