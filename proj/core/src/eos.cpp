#include "vdw/eos.hpp"

#include "vdw/errors.hpp"
#include "vdw/roots.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace vdw {

namespace {

void require_volume(const EosParams& p, double v, const char* who)
{
    if (!(v > p.b))
        throw DomainError(std::string(who) + ": volume must exceed b (v=" + std::to_string(v) +
                          ", b=" + std::to_string(p.b) + ")");
}

// u - log(1 + u), accurate for small |u|
double x_minus_log1p(double u)
{
    if (std::fabs(u) > 0.1)
        return u - std::log1p(u);
    double term = u * u;
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
        double t = term / k;
        sum += (k % 2 == 0) ? t : -t;
        if (std::fabs(t) < 1e-18 * std::fabs(sum))
            break;
        term *= u;
    }
    return sum;
}

// smallest v beyond `from` with p(v) below `level`
double vapor_bracket(const EosParams& p, double from, double level)
{
    double hi = 2.0 * from;
    for (int i = 0; i < 1100 && pressure(p, hi) >= level; ++i)
        hi *= 2.0;
    if (!std::isfinite(hi) || pressure(p, hi) >= level)
        throw OutOfBandError("pressure level has no vapor root in double range");
    return hi;
}

const RootOptions kVolumeRoot{1e-13, 4e-16, 200};

} // namespace

void validate(const EosParams& p)
{
    auto ok = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!ok(p.a) || !ok(p.b) || !ok(p.R) || !ok(p.theta))
        throw DomainError("EOS parameters a, b, R, theta must be positive and finite");
}

double critical_temperature(const EosParams& p)
{
    return 8.0 * p.a / (27.0 * p.R * p.b);
}

bool is_subcritical(const EosParams& p)
{
    return p.theta < critical_temperature(p);
}

double pressure(const EosParams& p, double v)
{
    require_volume(p, v, "pressure");
    return p.rt() / (v - p.b) - p.a / (v * v);
}

double pressure_derivative(const EosParams& p, double v, int order)
{
    require_volume(p, v, "pressure_derivative");
    double d = v - p.b;
    switch (order) {
    case 1:
        return -p.rt() / (d * d) + 2.0 * p.a / (v * v * v);
    case 2:
        return 2.0 * p.rt() / (d * d * d) - 6.0 * p.a / (v * v * v * v);
    default:
        throw DomainError("pressure_derivative: order must be 1 or 2");
    }
}

double potential_abs(const EosParams& p, double v)
{
    require_volume(p, v, "potential");
    return -p.rt() * std::log(v - p.b) - p.a / v;
}

double pressure_increment(const EosParams& p, double c, double d)
{
    require_volume(p, c + d, "pressure_increment");
    double cb = c - p.b;
    double cd = c + d;
    return -p.rt() * d / (cb * (cd - p.b)) + p.a * d * (2.0 * c + d) / (c * c * cd * cd);
}

double tangent_gap(const EosParams& p, double c, double d)
{
    require_volume(p, c + d, "tangent_gap");
    double u = d / (c - p.b);
    return p.rt() * x_minus_log1p(u) - p.a * d * d / (c * c * (c + d));
}

Spinodal spinodal_points(const EosParams& p)
{
    validate(p);
    if (!is_subcritical(p))
        throw SupercriticalError("temperature must be subcritical: 0 < theta < theta_c = " +
                                 std::to_string(critical_temperature(p)));
    double vc = 3.0 * p.b;
    if (!(pressure_derivative(p, vc, 1) > 0.0))
        throw SupercriticalError("spinodal pair unresolved in double precision (theta too close to theta_c)");
    auto dp = [&](double v) {
        return std::pair{pressure_derivative(p, v, 1), pressure_derivative(p, v, 2)};
    };
    // p' < 0 on (b, alpha), > 0 on (alpha, beta), < 0 beyond beta;
    // p'(2a/(R theta)) < 0 bounds beta from above.
    double alpha = find_root(dp, p.b, vc, 0.5 * (p.b + vc), true, kVolumeRoot);
    double vmax = 2.0 * p.a / p.rt();
    double beta = find_root(dp, vc, vmax, 0.5 * (vc + vmax), false, kVolumeRoot);
    return {alpha, beta};
}

bool Landscape::beta_bar_finite() const
{
    return std::isfinite(beta_bar);
}

Companion companion_points(const EosParams& p, const Spinodal& s)
{
    double s_lo = pressure(p, s.alpha);
    double s_hi = pressure(p, s.beta);
    auto level = [&](double target) {
        return [&p, target](double v) {
            return std::pair{pressure(p, v) - target, pressure_derivative(p, v, 1)};
        };
    };
    double alpha_bar = find_root(level(s_hi), p.b, s.alpha, 0.5 * (p.b + s.alpha), false, kVolumeRoot);
    double beta_bar = std::numeric_limits<double>::infinity();
    if (s_lo > 0.0) {
        double hi = vapor_bracket(p, s.beta, s_lo);
        beta_bar = find_root(level(s_lo), s.beta, hi, 0.5 * (s.beta + hi), false, kVolumeRoot);
    }
    return {alpha_bar, beta_bar};
}

IsobarRoots solve_isobar(const EosParams& p, const Landscape& land, double sigma)
{
    if (!(sigma > land.sigma_lo && sigma < land.sigma_hi))
        throw OutOfBandError("pressure level " + std::to_string(sigma) + " outside (" +
                             std::to_string(land.sigma_lo) + ", " + std::to_string(land.sigma_hi) + ")");
    if (!(sigma > 0.0))
        throw OutOfBandError("non-positive pressure level has no vapor root");
    auto fd = [&](double v) {
        return std::pair{pressure(p, v) - sigma, pressure_derivative(p, v, 1)};
    };
    IsobarRoots r{};
    r.alpha_sigma = find_root(fd, p.b, land.alpha, 0.5 * (p.b + land.alpha), false, kVolumeRoot);
    r.xi_sigma = find_root(fd, land.alpha, land.beta, 0.5 * (land.alpha + land.beta), true, kVolumeRoot);
    double hi = vapor_bracket(p, land.beta, sigma);
    r.beta_sigma = find_root(fd, land.beta, hi, 0.5 * (land.beta + hi), false, kVolumeRoot);
    return r;
}

} // namespace vdw
