#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace vdw {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

// One end of an interval on which the integrand is a power of a function f
// that vanishes at the end. `f(e)` must return f at distance e from the end,
// measured towards the interior, and stay accurate for e far below the
// resolution of `z` itself.
struct EndpointModel {
    double z = 0.0;
    std::function<double(double)> f;
    // Offsets below `scale` see f as linear in e; above it f grows
    // quadratically (a zero that is nearly double). Panels are graded
    // geometrically down to this scale. Infinity disables grading.
    double scale = std::numeric_limits<double>::infinity();
    // When the zero sits below double resolution the quadrature starts at
    // offset `cut`; `inner` is the caller's moment-0 integral over [0, cut].
    double cut = 0.0;
    double inner = 0.0;
};

enum class End { Left, Right };

// Integrals of s^m f(s)^q over [z1, z2] with the substitution
// s = (z1 + z2)/2 + ((z2 - z1)/2) sin(phi). Each half of the phi-range is
// measured from its endpoint, psi = phi + pi/2 on the left, and is covered
// by composite Gauss-Legendre panels refined by halving.
class EndpointQuadrature {
public:
    EndpointQuadrature(EndpointModel left, EndpointModel right, double exponent, double rel_tol = 1e-12);

    double moment(int m) const;                // m = 0 or 1, whole interval
    double half_total(End end) const;          // moment 0 over one half
    double cumulative(End end, double psi) const;
    double integrand(End end, double psi) const;   // d cumulative / d psi
    double offset_at_psi(double psi) const;
    double psi_at_offset(double e) const;
    // psi in [0, pi/2] at which cumulative(end, psi) = target
    double invert(End end, double target) const;
    // f at distance e from the given end
    double f_at(End end, double e) const;
    double radius() const { return r_; }
    double z(End end) const { return end == End::Left ? left_.z : right_.z; }
    double inner(End end) const { return model(end).inner; }
    long evaluations() const { return evaluations_; }
    std::size_t panel_count() const { return halves_[0].panels.size() + halves_[1].panels.size(); }

private:
    struct Panel {
        double a, b, m0, m1;
    };
    struct Half {
        std::vector<Panel> panels;
        std::vector<double> prefix;   // prefix sums of m0, size panels+1
    };

    const EndpointModel& model(End end) const { return end == End::Left ? left_ : right_; }
    void integrate_panel(End end, double a, double b, double& m0, double& m1) const;
    void refine(End end, double a, double b, double m0, double m1, int depth, Half& h) const;
    void build(End end);
    double bottom(End end) const;

    EndpointModel left_, right_;
    double q_;
    double r_;
    double tol_;
    double floor_ = 0.0;
    mutable long evaluations_ = 0;
    GaussRule rule_;
    Half halves_[2];
};

} // namespace vdw
