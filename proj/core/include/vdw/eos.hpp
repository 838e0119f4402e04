#pragma once

namespace vdw {

// van der Waals constants and the (fixed) temperature. Defaults are the
// reduced normalization: theta_c = 1, v_c = 1, p_c = 1.
struct EosParams {
    double a = 3.0;
    double b = 1.0 / 3.0;
    double R = 8.0 / 3.0;
    double theta = 0.85;

    double rt() const { return R * theta; }
};

// Throws DomainError unless a, b, R, theta are all positive and finite.
void validate(const EosParams& p);

double critical_temperature(const EosParams& p);
bool is_subcritical(const EosParams& p);

// p(v) = R theta/(v - b) - a/v^2
double pressure(const EosParams& p, double v);
// closed-form p' (order 1) or p'' (order 2)
double pressure_derivative(const EosParams& p, double v, int order);

// Potential with Phi' = -p, in the absolute gauge:
// Phi(v) = -R theta ln(v - b) - a/v.
double potential_abs(const EosParams& p, double v);

// p(c + d) - p(c), free of cancellation for small d.
double pressure_increment(const EosParams& p, double c, double d);

// Phi(c + d) - Phi(c) + p(c) d: distance of the potential above its tangent
// at c. Second order in d and computed to full relative precision, so it
// stays meaningful for offsets far below the resolution of c.
double tangent_gap(const EosParams& p, double c, double d);

struct Spinodal {
    double alpha;   // local minimum of p
    double beta;    // local maximum of p
};

Spinodal spinodal_points(const EosParams& p);

// Distinguished volumes and pressures of the subcritical isotherm.
// beta_bar is +infinity when sigma_lo <= 0 (no vapor root at that level).
struct Landscape {
    double alpha = 0, beta = 0;
    double alpha0 = 0, beta0 = 0;
    double alpha_bar = 0, beta_bar = 0;
    double sigma_lo = 0, sigma_hi = 0;
    double sigma0 = 0;
    // Maxwell level Phi(alpha0) + sigma0 alpha0 in the absolute gauge;
    // see maxwell_level() for the value with W(vbar) = 0.
    double lambda0_abs = 0;

    bool beta_bar_finite() const;
};

struct Companion {
    double alpha_bar;
    double beta_bar;
};

Companion companion_points(const EosParams& p, const Spinodal& s);

struct IsobarRoots {
    double alpha_sigma;
    double xi_sigma;
    double beta_sigma;
};

// Three roots of p(v) = sigma for sigma_lo < sigma < sigma_hi (and sigma > 0).
IsobarRoots solve_isobar(const EosParams& p, const Landscape& land, double sigma);

} // namespace vdw
