#include "vdw/viscous.hpp"

#include "vdw/errors.hpp"
#include "vdw/maxwell.hpp"
#include "vdw/roots.hpp"
#include "vdw/sharp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace vdw {

namespace {

const RootOptions kOffsetRoot{1e-300, 1e-15, 200};
const double kSqrt2 = std::numbers::sqrt2;
// guard against runaway Newton steps; far below anything a solve reaches
const double kMinLogGap = -1e5;

double curvature_W(const EosParams& p, double v)
{
    return -pressure_derivative(p, v, 1);
}

// d with p(alpha0 + d) = sigma0 + ds on the liquid branch
double liquid_shift(const EosParams& p, const Landscape& land, double ds)
{
    auto fd = [&](double d) {
        return std::pair{pressure_increment(p, land.alpha0, d) - ds, pressure_derivative(p, land.alpha0 + d, 1)};
    };
    double guess = ds / pressure_derivative(p, land.alpha0, 1);
    return find_root(fd, p.b - land.alpha0, land.alpha - land.alpha0, guess, false, kOffsetRoot);
}

// d with p(beta0 + d) = sigma0 + ds on the vapor branch
double vapor_shift(const EosParams& p, const Landscape& land, double ds)
{
    double level = land.sigma0 + ds;
    if (!(level > 0.0))
        throw OutOfBandError("non-positive pressure level has no vapor root");
    double hi = 2.0 * land.beta0;
    while (pressure(p, hi) >= level) {
        hi *= 2.0;
        if (!std::isfinite(hi))
            throw OutOfBandError("vapor root beyond double range");
    }
    auto fd = [&](double d) {
        return std::pair{pressure_increment(p, land.beta0, d) - ds, pressure_derivative(p, land.beta0 + d, 1)};
    };
    double guess = ds / pressure_derivative(p, land.beta0, 1);
    return find_root(fd, land.beta - land.beta0, hi - land.beta0, guess, false, kOffsetRoot);
}

struct Shifts {
    double d_alpha, d_beta;
};

Shifts well_shifts(const EosParams& p, const Landscape& land, double ds)
{
    return {liquid_shift(p, land, ds), vapor_shift(p, land, ds)};
}

// (W + sigma v)(beta_sigma) - (W + sigma v)(alpha_sigma); zero at sigma0 and
// increasing with derivative beta_sigma - alpha_sigma
double well_level_difference(const EosParams& p, const Landscape& land, double ds, const Shifts& s)
{
    double width = (land.beta0 - land.alpha0) + (s.d_beta - s.d_alpha);
    return tangent_gap(p, land.beta0, s.d_beta) - tangent_gap(p, land.alpha0, s.d_alpha) + ds * width;
}

// Offset of the turning point from a well bottom c with gap h, and f' there.
struct Turn {
    double t, slope;
};

// log of the turning offset when h = W''(c) t^2 / 2 to all resolvable orders
double deep_log_offset(const EosParams& p, double c, double log_h)
{
    return 0.5 * (std::log(2.0) + log_h - std::log(curvature_W(p, c)));
}

// Completes an orbit whose sigma-roots and gaps are set.
void close_orbit(const EosParams& p, FirstIntegral& fi, double log_h1, double log_h2, double deep_below)
{
    double a = fi.alpha_sigma, x = fi.xi_sigma, b = fi.beta_sigma;
    double h1 = std::exp(log_h1), h2 = std::exp(log_h2);
    double hill1 = tangent_gap(p, a, x - a);
    double hill2 = tangent_gap(p, b, x - b);
    if (!(h1 < hill1) || !(h2 < hill2))
        throw InadmissiblePairError("lambda is not below the hilltop level W(xi_sigma) + sigma xi_sigma",
                                    "lambda < W(xi_sigma) + sigma xi_sigma");
    fi.deep1 = log_h1 < deep_below;
    fi.deep2 = log_h2 < deep_below;

    Turn left{}, right{};
    if (fi.deep1) {
        left.t = std::exp(deep_log_offset(p, a, log_h1));
        left.slope = curvature_W(p, a) * left.t;
    } else {
        auto fd = [&](double t) { return std::pair{tangent_gap(p, a, t) - h1, -pressure_increment(p, a, t)}; };
        double g = std::sqrt(2.0 * h1 / curvature_W(p, a));
        left.t = find_root(fd, 0.0, x - a, std::min(g, 0.5 * (x - a)), true, kOffsetRoot);
        left.slope = -pressure_increment(p, a, left.t);
    }
    if (fi.deep2) {
        right.t = std::exp(deep_log_offset(p, b, log_h2));
        right.slope = curvature_W(p, b) * right.t;
    } else {
        auto fd = [&](double t) { return std::pair{tangent_gap(p, b, -t) - h2, pressure_increment(p, b, -t)}; };
        double g = std::sqrt(2.0 * h2 / curvature_W(p, b));
        right.t = find_root(fd, 0.0, b - x, std::min(g, 0.5 * (b - x)), true, kOffsetRoot);
        right.slope = pressure_increment(p, b, -right.t);
    }

    fi.z1 = a + left.t;
    fi.z2 = b - right.t;
    fi.z1_gap += left.t;
    fi.z2_gap -= right.t;
    fi.slope1 = left.slope;
    fi.slope2 = right.slope;
    if (!(fi.z2 - fi.z1 >= 1e-10))
        throw QuadratureError("turning points collapse onto the hilltop (z2 - z1 < 1e-10)");
    if ((!fi.deep1 && !(fi.slope1 > 0.0)) || (!fi.deep2 && !(fi.slope2 > 0.0)))
        throw QuadratureError("turning point is not a simple zero of f");
}

} // namespace

double potential_W(const EosParams& p, double vbar, double v)
{
    return -(p.a / v - p.a / vbar) - p.rt() * std::log((v - p.b) / (vbar - p.b));
}

double double_well_H(const EosParams& p, double vbar, double V)
{
    double v = V + vbar;
    if (!(v > p.b) || !(vbar > p.b))
        throw DomainError("double_well_H: V + vbar must exceed b");
    return pressure(p, vbar) * V - p.a * (1.0 / v - 1.0 / vbar) - p.rt() * std::log((v - p.b) / (vbar - p.b));
}

double first_integral_f(const EosParams& p, double vbar, double sigma, double lambda, double v)
{
    if (!(v > p.b))
        throw DomainError("first_integral_f: volume must exceed b");
    return potential_W(p, vbar, v) + sigma * v - lambda;
}

FirstIntegral orbit_from_pair(const EosParams& p, const Landscape& land, double vbar, double sigma, double lambda)
{
    IsobarRoots r = solve_isobar(p, land, sigma);
    auto level = [&](double v) { return potential_W(p, vbar, v) + sigma * v; };
    double h1 = lambda - level(r.alpha_sigma);
    double h2 = lambda - level(r.beta_sigma);
    bool vapor_binds = sigma > land.sigma0;
    if (!(h1 > 0.0) || !(h2 > 0.0)) {
        bool vapor_fails = !(h2 > 0.0);
        throw InadmissiblePairError(
            vapor_fails ? "lambda is not above the vapor well level W(beta_sigma) + sigma beta_sigma"
                        : "lambda is not above the liquid well level W(alpha_sigma) + sigma alpha_sigma",
            vapor_fails ? "W(beta_sigma) + sigma beta_sigma < lambda" : "W(alpha_sigma) + sigma alpha_sigma < lambda");
    }
    FirstIntegral fi;
    fi.sigma = sigma;
    fi.lambda = lambda;
    fi.d_sigma = sigma - land.sigma0;
    fi.d_lambda = lambda - maxwell_level(p, land, vbar);
    fi.alpha_sigma = r.alpha_sigma;
    fi.xi_sigma = r.xi_sigma;
    fi.beta_sigma = r.beta_sigma;
    fi.z1_gap = r.alpha_sigma - land.alpha0;
    fi.z2_gap = r.beta_sigma - land.beta0;
    fi.log_h1 = std::log(h1);
    fi.log_h2 = std::log(h2);
    fi.lower_bound_well = vapor_binds ? "vapor" : "liquid";
    close_orbit(p, fi, fi.log_h1, fi.log_h2, kDeepLogGap);
    return fi;
}

FirstIntegral orbit_from_log_gaps(const EosParams& p, const Landscape& land, double vbar, double log_h1,
                                  double log_h2, double deep_below)
{
    if (!(log_h1 > kMinLogGap) || !(log_h2 > kMinLogGap))
        throw InadmissiblePairError("well gap logarithm out of range", "log h > -1e5");
    double h1 = std::exp(log_h1), h2 = std::exp(log_h2);
    double target = h1 - h2;

    double lo = std::max(land.sigma_lo, 0.0) - land.sigma0;
    double hi = land.sigma_hi - land.sigma0;
    auto fd = [&](double ds) {
        Shifts s = well_shifts(p, land, ds);
        double width = (land.beta0 - land.alpha0) + (s.d_beta - s.d_alpha);
        return std::pair{well_level_difference(p, land, ds, s) - target, width};
    };
    double ds = find_root(fd, lo, hi, target / (land.beta0 - land.alpha0), true, kOffsetRoot);
    Shifts s = well_shifts(p, land, ds);
    double miss = well_level_difference(p, land, ds, s) - target;
    if (!(std::fabs(miss) <= 1e-12 * std::max({std::fabs(target), h1, h2})))
        throw InadmissiblePairError("gap difference outside the range of the three-root band",
                                    "sigma_lo < sigma < sigma_hi");

    FirstIntegral fi;
    fi.d_sigma = ds;
    fi.sigma = land.sigma0 + ds;
    fi.alpha_sigma = land.alpha0 + s.d_alpha;
    fi.beta_sigma = land.beta0 + s.d_beta;
    auto xi_fd = [&](double v) { return std::pair{pressure(p, v) - fi.sigma, pressure_derivative(p, v, 1)}; };
    fi.xi_sigma = find_root(xi_fd, land.alpha, land.beta, 0.5 * (land.alpha + land.beta), true,
                            RootOptions{1e-13, 4e-16, 200});
    fi.d_lambda = h1 + tangent_gap(p, land.alpha0, s.d_alpha) + ds * fi.alpha_sigma;
    fi.lambda = maxwell_level(p, land, vbar) + fi.d_lambda;
    fi.z1_gap = s.d_alpha;
    fi.z2_gap = s.d_beta;
    fi.log_h1 = log_h1;
    fi.log_h2 = log_h2;
    fi.lower_bound_well = ds > 0.0 ? "vapor" : "liquid";
    close_orbit(p, fi, log_h1, log_h2, deep_below);
    return fi;
}

std::pair<double, double> turning_points(const EosParams& p, const Landscape& land, double vbar, double sigma,
                                         double lambda)
{
    FirstIntegral fi = orbit_from_pair(p, land, vbar, sigma, lambda);
    return {fi.z1, fi.z2};
}

std::pair<double, double> turning_points(const EosParams& p, double vbar, double sigma, double lambda)
{
    return turning_points(p, construct(p), vbar, sigma, lambda);
}

EndpointQuadrature orbit_quadrature(const EosParams& p, const FirstIntegral& fi, double exponent, double rel_tol)
{
    auto scale_at = [&](double z, double slope) {
        double c = curvature_W(p, z);
        return c > 0.0 ? 2.0 * slope / c : std::numeric_limits<double>::infinity();
    };
    // Deep end: below the cut u the orbit is f = W''(c)(u^2 - t^2)/2 to
    // relative accuracy u, and beyond it the gap h is below f's resolution.
    auto deep = [&](double bottom, double log_h, double sign) {
        if (exponent != -0.5 && exponent != 0.5)
            throw DomainError("orbit_quadrature: exponent must be -1/2 or 1/2 for deep orbits");
        double log_t = deep_log_offset(p, bottom, log_h);
        double cut = std::exp(std::max(0.5 * log_t, -340.0));
        double c = curvature_W(p, bottom);
        EndpointModel m{bottom, [p, bottom, sign](double e) { return tangent_gap(p, bottom, sign * e); }};
        m.cut = cut;
        m.inner = exponent < 0.0 ? std::sqrt(2.0 / c) * (std::log(2.0 * cut) - log_t) : 0.0;
        return m;
    };
    EndpointModel left = fi.deep1 ? deep(fi.alpha_sigma, fi.log_h1, 1.0)
                                  : EndpointModel{fi.z1,
                                                  [p, z = fi.z1, s = fi.slope1](double e) {
                                                      return s * e + tangent_gap(p, z, e);
                                                  },
                                                  scale_at(fi.z1, fi.slope1)};
    EndpointModel right = fi.deep2 ? deep(fi.beta_sigma, fi.log_h2, -1.0)
                                   : EndpointModel{fi.z2,
                                                   [p, z = fi.z2, s = fi.slope2](double e) {
                                                       return s * e + tangent_gap(p, z, -e);
                                                   },
                                                   scale_at(fi.z2, fi.slope2)};
    return EndpointQuadrature(std::move(left), std::move(right), exponent, rel_tol);
}

PeriodIntegrals period_integrals(const EosParams& p, const FirstIntegral& fi)
{
    EndpointQuadrature q = orbit_quadrature(p, fi, -0.5);
    return {q.moment(0) / kSqrt2, q.moment(1) / kSqrt2};
}

PeriodIntegrals period_integrals(const EosParams& p, const Landscape& land, double vbar, double sigma,
                                 double lambda)
{
    return period_integrals(p, orbit_from_pair(p, land, vbar, sigma, lambda));
}

HScaling h_scaling(const EosParams& p, const Landscape& land, double vbar)
{
    HScaling s{};
    double w = land.beta0 - land.alpha0;
    s.B1 = 1.0 / std::sqrt(2.0 * curvature_W(p, land.alpha0));
    s.B2 = 1.0 / std::sqrt(2.0 * curvature_W(p, land.beta0));
    s.mu1 = 1.0 / (s.B1 * w);
    s.mu2 = 1.0 / (s.B2 * w);
    s.c1 = 2.0 * (land.beta0 - vbar) / (s.B1 * w);
    s.c2 = 2.0 * (vbar - land.alpha0) / (s.B2 * w);
    return s;
}

HCoordinates h_coordinates(const EosParams& p, const Landscape& land, double vbar, double eps,
                           const FirstIntegral& fi)
{
    HScaling s = h_scaling(p, land, vbar);
    Shifts sh = well_shifts(p, land, fi.d_sigma);
    HCoordinates h{};
    h.h1 = fi.d_lambda - tangent_gap(p, land.alpha0, sh.d_alpha) - fi.d_sigma * (land.alpha0 + sh.d_alpha);
    h.h2 = fi.d_lambda - tangent_gap(p, land.beta0, sh.d_beta) - fi.d_sigma * (land.beta0 + sh.d_beta);
    h.B1 = s.B1;
    h.B2 = s.B2;
    h.mu1 = s.mu1;
    h.mu2 = s.mu2;
    h.c1 = s.c1;
    h.c2 = s.c2;
    h.k1 = (std::log(h.h1) + s.c1 / eps) / s.mu1;
    h.k2 = (std::log(h.h2) + s.c2 / eps) / s.mu2;
    return h;
}

const char* to_string(ProfileKind k)
{
    switch (k) {
    case ProfileKind::SinglePeak:
        return "single_peak";
    case ProfileKind::SingleValley:
        return "single_valley";
    case ProfileKind::MultiInterface:
        return "multi_interface";
    case ProfileKind::Constant:
        return "constant";
    }
    return "?";
}

const char* to_string(Orientation o)
{
    return o == Orientation::Valley ? "valley" : "peak";
}

double max_spinodal_slope(const EosParams& p, const Landscape& land)
{
    // p' vanishes at both ends and has one interior maximum where p'' = 0
    auto fd = [&](double v) { return std::pair{pressure_derivative(p, v, 2), 0.0}; };
    double v = find_root(fd, land.alpha, land.beta, 0.5 * (land.alpha + land.beta), false,
                         RootOptions{1e-14, 4e-16, 400});
    return pressure_derivative(p, v, 1);
}

double triviality_threshold(const EosParams& p, const Landscape& land)
{
    return std::sqrt(max_spinodal_slope(p, land)) / std::numbers::pi;
}

namespace {

struct Trial {
    bool ok = false;
    double r0 = 0.0, r1 = 0.0;
    FirstIntegral fi;
    double norm() const { return std::max(std::fabs(r0), std::fabs(r1)); }
};

class CellSystem {
public:
    CellSystem(const EosParams& p, const Landscape& land, double vbar, double eps, int cells)
        : p_(p), land_(land), vbar_(vbar), eps_(eps), cells_(cells), scaling_(h_scaling(p, land, vbar))
    {
    }

    double log_h1(double k1) const { return scaling_.mu1 * k1 - scaling_.c1 / eps_; }
    double log_h2(double k2) const { return scaling_.mu2 * k2 - scaling_.c2 / eps_; }
    double k1_of(double lh) const { return (lh + scaling_.c1 / eps_) / scaling_.mu1; }
    double k2_of(double lh) const { return (lh + scaling_.c2 / eps_) / scaling_.mu2; }

    Trial evaluate(double k1, double k2) const
    {
        Trial t;
        try {
            t.fi = orbit_from_log_gaps(p_, land_, vbar_, log_h1(k1), log_h2(k2));
            PeriodIntegrals I = period_integrals(p_, t.fi);
            double scale = cells_ * eps_;
            t.r0 = scale * I.I0 - 1.0;
            t.r1 = scale * I.I1 - vbar_;
            t.ok = std::isfinite(t.r0) && std::isfinite(t.r1);
        } catch (const Error&) {
            t.ok = false;
        }
        return t;
    }

    // leading-order gaps: each plateau of length l_i takes -B_i ln(h_i)/sqrt 2 of the half period
    std::pair<double, double> asymptotic_log_gaps() const
    {
        auto [l1, l2] = phase_lengths(land_, vbar_);
        double e = cells_ * eps_;
        return {-l1 / (kSqrt2 * scaling_.B1 * e), -l2 / (kSqrt2 * scaling_.B2 * e)};
    }

    double eps() const { return eps_; }

private:
    const EosParams& p_;
    const Landscape& land_;
    double vbar_, eps_;
    int cells_;
    HScaling scaling_;
};

struct NewtonOutcome {
    bool converged = false;
    double k1 = 0.0, k2 = 0.0;
    Trial last;
    int iterations = 0;
    double best_norm = std::numeric_limits<double>::infinity();
};

NewtonOutcome newton(const CellSystem& sys, double log_h1, double log_h2, const SolveOptions& opt)
{
    NewtonOutcome out;
    double k1 = sys.k1_of(log_h1), k2 = sys.k2_of(log_h2);
    Trial cur = sys.evaluate(k1, k2);
    // deepen an inadmissible guess (gaps above the hilltop)
    for (int i = 0; i < 30 && !cur.ok; ++i) {
        log_h1 = 1.3 * log_h1 - 0.1;
        log_h2 = 1.3 * log_h2 - 0.1;
        k1 = sys.k1_of(log_h1);
        k2 = sys.k2_of(log_h2);
        cur = sys.evaluate(k1, k2);
    }
    if (!cur.ok)
        return out;
    const double h = opt.fd_step;
    for (int it = 0; it < opt.max_newton; ++it) {
        out.iterations = it;
        out.best_norm = std::min(out.best_norm, cur.norm());
        if (cur.norm() < opt.newton_tol) {
            out.converged = true;
            break;
        }
        Trial a = sys.evaluate(k1 + h, k2);
        double ha = h;
        if (!a.ok) {
            a = sys.evaluate(k1 - h, k2);
            ha = -h;
        }
        Trial b = sys.evaluate(k1, k2 + h);
        double hb = h;
        if (!b.ok) {
            b = sys.evaluate(k1, k2 - h);
            hb = -h;
        }
        if (!a.ok || !b.ok)
            break;
        double j00 = (a.r0 - cur.r0) / ha, j10 = (a.r1 - cur.r1) / ha;
        double j01 = (b.r0 - cur.r0) / hb, j11 = (b.r1 - cur.r1) / hb;
        double det = j00 * j11 - j01 * j10;
        if (!(std::fabs(det) > 0.0) || !std::isfinite(det))
            break;
        double d1 = -(j11 * cur.r0 - j01 * cur.r1) / det;
        double d2 = -(-j10 * cur.r0 + j00 * cur.r1) / det;
        // at most 20 e-folds of either gap per step
        const double limit = 20.0;
        double big = std::max(std::fabs(sys.log_h1(k1 + d1) - sys.log_h1(k1)),
                              std::fabs(sys.log_h2(k2 + d2) - sys.log_h2(k2)));
        if (big > limit) {
            d1 *= limit / big;
            d2 *= limit / big;
        }
        double t = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            Trial c = sys.evaluate(k1 + t * d1, k2 + t * d2);
            if (c.ok && c.norm() < (1.0 - 1e-4 * t) * cur.norm()) {
                k1 += t * d1;
                k2 += t * d2;
                cur = c;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            // quadrature noise floor: accept a stalled iterate that is already tight
            out.converged = cur.norm() < 1e-9;
            break;
        }
    }
    out.best_norm = std::min(out.best_norm, cur.norm());
    if (cur.norm() < opt.newton_tol)
        out.converged = true;
    out.k1 = k1;
    out.k2 = k2;
    out.last = cur;
    return out;
}

CellSolution package(const CellSystem& sys, const NewtonOutcome& o, int cells, int rungs)
{
    CellSolution s;
    s.fi = o.last.fi;
    s.eps = sys.eps();
    s.cells = cells;
    s.k1 = o.k1;
    s.k2 = o.k2;
    s.residual_period = o.last.r0;
    s.residual_mass = o.last.r1;
    s.iterations = o.iterations;
    s.rungs = rungs;
    return s;
}

// predictor: log gaps scale like -C / eps between nearby rungs
std::pair<double, double> predicted_log_gaps(const CellSolution& from, double eps)
{
    double r = from.eps / eps;
    return {from.fi.log_h1 * r, from.fi.log_h2 * r};
}

} // namespace

CellSolution solve_cells(const EosParams& p, const Landscape& land, double vbar, double eps, int cells,
                         const SolveOptions& opt, const CellSolution* warm)
{
    if (cells < 1)
        throw DomainError("solve_cells: number of cells must be at least 1");
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw DomainError("solve_cells: epsilon must be positive");
    if (!(vbar > land.alpha0 && vbar < land.beta0))
        throw InfeasibleError("vbar outside the Maxwell interval: no two-interface solution");
    const double eps_star = triviality_threshold(p, land);
    double best = std::numeric_limits<double>::infinity();

    auto attempt = [&](double e, std::pair<double, double> guess, int rungs) -> std::optional<CellSolution> {
        CellSystem sys(p, land, vbar, e, cells);
        NewtonOutcome o = newton(sys, guess.first, guess.second, opt);
        if (e == eps)
            best = std::min(best, o.best_norm);   // residual at the requested eps only
        if (!o.converged)
            return std::nullopt;
        return package(sys, o, cells, rungs);
    };
    auto asymptotic = [&](double e) { return CellSystem(p, land, vbar, e, cells).asymptotic_log_gaps(); };

    if (warm && warm->cells == cells) {
        if (auto s = attempt(eps, predicted_log_gaps(*warm, eps), 0))
            return *s;
    }
    if (auto s = attempt(eps, asymptotic(eps), 0))
        return *s;

    // continuation: find a rung on either side of eps that solves from the
    // asymptotic guess, then walk towards eps reusing each rung's solution
    auto walk = [&](CellSolution cur) -> std::optional<CellSolution> {
        int rungs = 0;
        double ratio = cur.eps > eps ? opt.ladder_ratio : 1.0 / opt.ladder_ratio;
        while (std::fabs(cur.eps - eps) > 1e-12 * eps && rungs < 4 * opt.max_rungs) {
            double next = cur.eps > eps ? std::max(cur.eps * ratio, eps) : std::min(cur.eps * ratio, eps);
            auto s = attempt(next, predicted_log_gaps(cur, next), ++rungs);
            if (s) {
                cur = *s;
                ratio = cur.eps > eps ? opt.ladder_ratio : 1.0 / opt.ladder_ratio;
            } else {
                ratio = std::sqrt(ratio);
                if (std::fabs(ratio - 1.0) < 1e-3)
                    return std::nullopt;
            }
        }
        cur.rungs = rungs;
        return cur;
    };
    double up = eps;
    for (int j = 0; j < opt.max_rungs; ++j) {
        up /= opt.ladder_ratio;
        if (up * cells >= eps_star)
            break;
        if (auto anchor = attempt(up, asymptotic(up), 0)) {
            if (auto s = walk(*anchor))
                return *s;
            break;
        }
    }
    double down = eps;
    for (int j = 0; j < opt.max_rungs; ++j) {
        down *= opt.ladder_ratio;
        if (auto anchor = attempt(down, asymptotic(down), 0)) {
            if (auto s = walk(*anchor))
                return *s;
            break;
        }
    }
    std::ostringstream msg;
    msg.precision(6);
    msg << "no two-interface solution found at eps = " << eps << " with " << cells
        << " cell(s); best residual " << best << "; triviality threshold eps* = " << eps_star;
    if (eps * cells >= eps_star)
        msg << " (eps^2 pi^2 > max p' on [alpha, beta]: only the constant state is steady)";
    else
        msg << " (below eps* but beyond the fold of the continuation branch)";
    throw NoSolutionError(msg.str(), best, eps_star);
}

ViscousSolution reconstruct_profile(const EosParams& p, double vbar, double eps, const FirstIntegral& fi,
                                    Orientation orientation, int grid_size, int cells, double shift)
{
    if (grid_size < 64)
        throw DomainError("reconstruct_profile: grid_size must be at least 64");
    if (cells < 1)
        throw DomainError("reconstruct_profile: number of cells must be at least 1");
    EndpointQuadrature q = orbit_quadrature(p, fi, -0.5);
    const double left_total = q.half_total(End::Left);
    const double total = left_total + q.half_total(End::Right);
    const double cell = 2.0 / (cells * eps);
    const double half_cell = 0.5 * cell;
    // rising-branch time in the quadrature's own units, so both ends map exactly
    const double to_q = total / half_cell;

    ViscousSolution sol;
    sol.epsilon = eps;
    sol.vbar = vbar;
    sol.first_integral = fi;
    sol.cells = cells;
    sol.n_transitions = 2 * cells;
    sol.orientation = orientation;
    sol.shift = shift;
    sol.kind = cells > 1 ? ProfileKind::MultiInterface
                         : (orientation == Orientation::Valley ? ProfileKind::SingleValley : ProfileKind::SinglePeak);
    sol.grid.resize(grid_size + 1);
    const double dy = 2.0 / (eps * grid_size);
    for (int j = 0; j <= grid_size; ++j) {
        double y = -1.0 / eps + j * dy;
        double t = y - shift + 1.0 / eps;
        double d = t - cell * std::floor(t / cell);
        double from_center = std::fabs(d - half_cell);
        double along = orientation == Orientation::Valley ? half_cell - from_center : from_center;
        // `along` is the distance from the nearest maximum; rising time from z1 is half_cell - along
        double rise = (half_cell - along) * to_q;
        double side = (d > half_cell) ? 1.0 : -1.0;
        if (orientation == Orientation::Peak)
            side = -side;

        ProfileSample& s = sol.grid[j];
        s.y = y;
        s.x = eps * y;
        double f;
        if (rise <= left_total) {
            double psi = q.invert(End::Left, rise);
            double e = q.offset_at_psi(psi);
            s.v = fi.z1 + e;
            f = q.f_at(End::Left, e);
            s.d2v = fi.slope1 - pressure_increment(p, fi.z1, e);
        } else {
            double psi = q.invert(End::Right, std::max(total - rise, 0.0));
            double e = q.offset_at_psi(psi);
            s.v = fi.z2 - e;
            f = q.f_at(End::Right, e);
            s.d2v = -fi.slope2 - pressure_increment(p, fi.z2, -e);
        }
        s.dv = side * std::sqrt(2.0 * std::max(f, 0.0));
    }
    return sol;
}

namespace {

ViscousSolution finish(const EosParams& p, double vbar, double eps, const CellSolution& cs, const SolveOptions& opt)
{
    ViscousSolution sol;
    if (opt.reconstruct) {
        sol = reconstruct_profile(p, vbar, eps, cs.fi, opt.orientation, opt.grid_size, cs.cells, opt.shift);
    } else {
        sol.epsilon = eps;
        sol.vbar = vbar;
        sol.first_integral = cs.fi;
        sol.cells = cs.cells;
        sol.n_transitions = 2 * cs.cells;
        sol.orientation = opt.orientation;
        sol.kind = cs.cells > 1 ? ProfileKind::MultiInterface
                                : (opt.orientation == Orientation::Valley ? ProfileKind::SingleValley
                                                                          : ProfileKind::SinglePeak);
    }
    sol.residual_period = cs.residual_period;
    sol.residual_mass = cs.residual_mass;
    sol.k1 = cs.k1;
    sol.k2 = cs.k2;
    sol.newton_iterations = cs.iterations;
    sol.continuation_rungs = cs.rungs;
    return sol;
}

} // namespace

ViscousSolution solve_two_interface(const EosParams& p, const Landscape& land, double vbar, double eps,
                                    const SolveOptions& opt)
{
    return finish(p, vbar, eps, solve_cells(p, land, vbar, eps, 1, opt), opt);
}

ViscousSolution solve_2N(const EosParams& p, const Landscape& land, double vbar, double eps, int cells,
                         const SolveOptions& opt)
{
    return finish(p, vbar, eps, solve_cells(p, land, vbar, eps, cells, opt), opt);
}

ViscousSolution constant_solution(const EosParams& p, double vbar, double eps, int grid_size)
{
    if (grid_size < 64)
        throw DomainError("constant_solution: grid_size must be at least 64");
    ViscousSolution sol;
    sol.epsilon = eps;
    sol.vbar = vbar;
    sol.cells = 0;
    sol.n_transitions = 0;
    sol.kind = ProfileKind::Constant;
    FirstIntegral& fi = sol.first_integral;
    fi.sigma = pressure(p, vbar);
    fi.lambda = fi.sigma * vbar;   // f(vbar) = 0 since W(vbar) = 0
    fi.z1 = fi.z2 = vbar;
    fi.alpha_sigma = fi.xi_sigma = fi.beta_sigma = vbar;
    sol.grid.resize(grid_size + 1);
    double dy = 2.0 / (eps * grid_size);
    for (int j = 0; j <= grid_size; ++j) {
        double y = -1.0 / eps + j * dy;
        sol.grid[j] = {y, eps * y, vbar, 0.0, 0.0};
    }
    return sol;
}

SteadyResiduals steady_residuals(const EosParams& p, const ViscousSolution& sol)
{
    SteadyResiduals r;
    const int m = sol.grid_size();
    const double dy = sol.dy();
    const FirstIntegral& fi = sol.first_integral;
    auto v = [&](int j) { return sol.grid[((j % m) + m) % m].v; };
    double sum = 0.0;
    int last_sign = 0, first_sign = 0;
    const double slack = 1e-12 * std::max(1.0, std::fabs(fi.z2));
    for (int j = 0; j < m; ++j) {
        double vj = v(j);
        sum += vj;
        double second = (v(j + 1) - 2.0 * vj + v(j - 1)) / (dy * dy);
        r.ode = std::max(r.ode, std::fabs(second + pressure(p, vj) - fi.sigma));
        double first = (v(j + 1) - v(j - 1)) / (2.0 * dy);
        double f = first_integral_f(p, sol.vbar, fi.sigma, fi.lambda, vj);
        r.first_integral = std::max(r.first_integral, std::fabs(0.5 * first * first - f));
        if (vj < fi.z1 - slack || vj > fi.z2 + slack)
            r.in_range = false;
        double dv = v(j + 1) - vj;
        int sgn = dv > 0.0 ? 1 : (dv < 0.0 ? -1 : 0);
        if (sgn != 0) {
            if (first_sign == 0)
                first_sign = sgn;
            else if (sgn != last_sign)
                ++r.monotonicity_changes;
            last_sign = sgn;
        }
    }
    if (first_sign != 0 && last_sign != first_sign)
        ++r.monotonicity_changes;
    r.mean = std::fabs(sum / m - sol.vbar);
    r.periodicity = std::fabs(sol.grid.front().v - sol.grid.back().v);
    return r;
}

} // namespace vdw
