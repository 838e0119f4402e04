#include "vdw/quadrature.hpp"

#include "vdw/errors.hpp"
#include "vdw/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vdw {

GaussRule gauss_legendre(int n)
{
    if (n < 1)
        throw DomainError("gauss_legendre: n must be positive");
    GaussRule g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16)
                break;
        }
        g.nodes[i] = -x;
        g.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.weights[i] = w;
        g.weights[n - 1 - i] = w;
    }
    return g;
}

EndpointQuadrature::EndpointQuadrature(EndpointModel left, EndpointModel right, double exponent, double rel_tol)
    : left_(std::move(left)), right_(std::move(right)), q_(exponent), tol_(rel_tol), rule_(gauss_legendre(20))
{
    r_ = 0.5 * (right_.z - left_.z);
    if (!(r_ > 0.0) || !std::isfinite(r_))
        throw QuadratureError("endpoint quadrature: empty or invalid interval");
    // coarse pass fixes the absolute floor used when refining
    for (const EndpointModel* m : {&left_, &right_})
        if (!(m->cut >= 0.0 && m->cut < r_) || !(m->inner >= 0.0))
            throw QuadratureError("endpoint quadrature: inner cut outside the half interval");
    double coarse = 0.0;
    for (End end : {End::Left, End::Right}) {
        double m0, m1;
        integrate_panel(end, bottom(end), 0.5 * std::numbers::pi, m0, m1);
        coarse += std::fabs(m0) + model(end).inner;
    }
    floor_ = 1e-3 * tol_ * coarse;
    build(End::Left);
    build(End::Right);
}

double EndpointQuadrature::offset_at_psi(double psi) const
{
    double s = std::sin(0.5 * psi);
    return 2.0 * r_ * s * s;
}

double EndpointQuadrature::psi_at_offset(double e) const
{
    double t = std::sqrt(std::clamp(e / (2.0 * r_), 0.0, 1.0));
    return 2.0 * std::asin(t);
}

double EndpointQuadrature::f_at(End end, double e) const
{
    return model(end).f(e);
}

double EndpointQuadrature::integrand(End end, double psi) const
{
    ++evaluations_;
    double e = offset_at_psi(psi);
    double fv = model(end).f(e);
    double jac = r_ * std::sin(psi);
    if (!(fv > 0.0)) {
        if (q_ < 0.0 || !(fv >= -1e-300) || std::isnan(fv))
            throw QuadratureError("endpoint quadrature: integrand base is not positive inside the interval");
        return 0.0;
    }
    if (q_ == -0.5)
        return jac / std::sqrt(fv);
    if (q_ == 0.5)
        return jac * std::sqrt(fv);
    return jac * std::pow(fv, q_);
}

void EndpointQuadrature::integrate_panel(End end, double a, double b, double& m0, double& m1) const
{
    double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double dir = end == End::Left ? 1.0 : -1.0;
    double z = model(end).z;
    m0 = 0.0;
    m1 = 0.0;
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
        double psi = mid + half * rule_.nodes[i];
        double g = rule_.weights[i] * integrand(end, psi);
        m0 += g;
        m1 += g * (z + dir * offset_at_psi(psi));
    }
    m0 *= half;
    m1 *= half;
}

void EndpointQuadrature::refine(End end, double a, double b, double m0, double m1, int depth, Half& h) const
{
    double mid = 0.5 * (a + b);
    double l0, l1, r0, r1;
    integrate_panel(end, a, mid, l0, l1);
    integrate_panel(end, mid, b, r0, r1);
    double both = l0 + r0;
    if (std::fabs(both - m0) <= tol_ * std::fabs(both) + floor_ || depth >= 48) {
        if (depth >= 48 && std::fabs(both - m0) > 1e3 * (tol_ * std::fabs(both) + floor_))
            throw QuadratureError("endpoint quadrature: refinement limit reached");
        h.panels.push_back({a, mid, l0, l1});
        h.panels.push_back({mid, b, r0, r1});
        return;
    }
    refine(end, a, mid, l0, l1, depth + 1, h);
    refine(end, mid, b, r0, r1, depth + 1, h);
}

double EndpointQuadrature::bottom(End end) const
{
    return model(end).cut > 0.0 ? psi_at_offset(model(end).cut) : 0.0;
}

void EndpointQuadrature::build(End end)
{
    const double top = 0.5 * std::numbers::pi;
    const double low = bottom(end);
    std::vector<double> edges{top};
    double scale = model(end).scale;
    if (low > 0.0) {
        // integrand grows like 1/psi towards the cut
        double e = top;
        while (e * 0.5 > low) {
            e *= 0.5;
            edges.push_back(e);
        }
        edges.push_back(low);
    } else if (std::isfinite(scale) && scale < r_) {
        double floor_psi = psi_at_offset(scale) / 8.0;
        double e = top;
        while (e > floor_psi && e > 1e-290) {
            e *= 0.5;
            edges.push_back(e);
        }
    } else {
        edges.push_back(0.5 * top);
    }
    if (low == 0.0)
        edges.push_back(0.0);
    std::reverse(edges.begin(), edges.end());

    Half& h = halves_[end == End::Left ? 0 : 1];
    h.panels.clear();
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double m0, m1;
        integrate_panel(end, edges[i], edges[i + 1], m0, m1);
        refine(end, edges[i], edges[i + 1], m0, m1, 0, h);
    }
    h.prefix.assign(h.panels.size() + 1, model(end).inner);
    for (std::size_t i = 0; i < h.panels.size(); ++i)
        h.prefix[i + 1] = h.prefix[i] + h.panels[i].m0;
}

double EndpointQuadrature::moment(int m) const
{
    if (m != 0 && m != 1)
        throw DomainError("endpoint quadrature: moment must be 0 or 1");
    double sum = 0.0;
    for (End end : {End::Left, End::Right}) {
        const EndpointModel& em = model(end);
        sum += m == 0 ? em.inner : em.z * em.inner;
        for (const Panel& p : halves_[end == End::Left ? 0 : 1].panels)
            sum += m == 0 ? p.m0 : p.m1;
    }
    return sum;
}

double EndpointQuadrature::half_total(End end) const
{
    return halves_[end == End::Left ? 0 : 1].prefix.back();
}

double EndpointQuadrature::cumulative(End end, double psi) const
{
    const Half& h = halves_[end == End::Left ? 0 : 1];
    if (psi <= 0.0)
        return 0.0;
    if (psi <= h.panels.front().a)
        return h.prefix.front();
    if (psi >= h.panels.back().b)
        return h.prefix.back();
    auto it = std::upper_bound(h.panels.begin(), h.panels.end(), psi,
                               [](double x, const Panel& p) { return x < p.b; });
    std::size_t k = static_cast<std::size_t>(it - h.panels.begin());
    const Panel& p = h.panels[k];
    if (psi == p.a)
        return h.prefix[k];
    double half = 0.5 * (psi - p.a), mid = 0.5 * (psi + p.a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i)
        s += rule_.weights[i] * integrand(end, mid + half * rule_.nodes[i]);
    return h.prefix[k] + half * s;
}

double EndpointQuadrature::invert(End end, double target) const
{
    const Half& h = halves_[end == End::Left ? 0 : 1];
    if (target <= 0.0)
        return 0.0;
    if (target <= h.prefix.front()) {
        // inside the analytic inner piece: offsets there are below resolution
        return h.panels.front().a * (target / h.prefix.front());
    }
    if (target >= h.prefix.back())
        return h.panels.back().b;
    auto it = std::upper_bound(h.prefix.begin(), h.prefix.end(), target);
    std::size_t k = static_cast<std::size_t>(it - h.prefix.begin()) - 1;
    const Panel& p = h.panels[k];
    auto fd = [&](double psi) { return std::pair{cumulative(end, psi) - target, integrand(end, psi)}; };
    double guess = p.a + (p.b - p.a) * (target - h.prefix[k]) / (h.prefix[k + 1] - h.prefix[k]);
    return find_root(fd, p.a, p.b, guess, true, RootOptions{1e-300, 1e-15, 200});
}

} // namespace vdw
