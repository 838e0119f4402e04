#pragma once

#include "vdw/errors.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace vdw {

struct RootOptions {
    double xtol_abs = 1e-13;
    double xtol_rel = 0.0;
    int max_iter = 200;
};

// Root of a monotone function on (lo, hi). fd(x) returns {f(x), f'(x)}.
// The endpoints are never evaluated, so they may sit on singularities;
// `increasing` gives the direction of monotonicity. Newton steps are taken
// from x0 and replaced by bisection whenever they leave the bracket or
// fail to halve it.
template <class F>
double find_root(F&& fd, double lo, double hi, double x0, bool increasing,
                 const RootOptions& opt = {})
{
    if (!(lo < hi))
        throw ConvergenceError("find_root: empty bracket");
    double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
    double step_prev = hi - lo;
    for (int it = 0; it < opt.max_iter; ++it) {
        auto [f, df] = fd(x);
        if (f == 0.0)
            return x;
        if ((f > 0.0) == increasing)
            hi = x;
        else
            lo = x;
        double tol = opt.xtol_abs + opt.xtol_rel * std::fabs(x);
        double next = 0.0;
        bool newton_ok = false;
        if (df != 0.0 && std::isfinite(df)) {
            next = x - f / df;
            newton_ok = next > lo && next < hi && std::fabs(next - x) < 0.5 * step_prev;
        }
        if (!newton_ok)
            next = 0.5 * (lo + hi);
        double step = std::fabs(next - x);
        if (step <= tol || hi - lo <= 2.0 * tol)
            return next;
        step_prev = newton_ok ? step : hi - lo;
        x = next;
    }
    throw ConvergenceError("find_root: iteration limit reached", hi - lo);
}

} // namespace vdw
