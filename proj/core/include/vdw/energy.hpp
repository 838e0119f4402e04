#pragma once

#include "vdw/eos.hpp"
#include "vdw/viscous.hpp"

#include <string>
#include <vector>

namespace vdw {

// G(V) = integral over [-1, 1] of H(V) + (eps^2/2) V_x^2 for periodic samples
// V_j = V(-1 + 2j/m), j < m. Throws MeanViolationError if |mean V| > 1e-8.
double functional_G(const EosParams& p, double vbar, const std::vector<double>& V, double eps);

// E = eps * integral of W(v) + v_y^2 / 2 over the period, both ways.
struct EnergyPaths {
    double closed;   // 2(-sigma vbar + lambda) + 2 sqrt2 eps N * integral of f^(1/2)
    double grid;     // periodic trapezoid, fourth-order differences for v_y
};

EnergyPaths energy_paths(const EosParams& p, const ViscousSolution& sol);

// Closed form, cross-checked against the grid path to 1e-6 relative
// (CrossCheckError otherwise). Constant profiles give 2 W(vbar) = 0.
double energy_E(const EosParams& p, const ViscousSolution& sol);

// E - 2(-sigma0 vbar + lambda0) from the orbit offsets, without cancellation.
double energy_excess(const EosParams& p, const Landscape& land, double vbar, double eps, const FirstIntegral& fi,
                     int cells = 1);

double energy_leading(const EosParams& p, const Landscape& land, double vbar);

// dE/dsigma and dE/dlambda with (sigma, lambda) as free parameters; both
// vanish exactly when the cell conditions hold.
struct EnergyGradient {
    double d_sigma;    // -2 vbar + 2 eps N I1
    double d_lambda;   // 2 - 2 eps N I0
};

EnergyGradient energy_gradient(const EosParams& p, double vbar, double eps, const FirstIntegral& fi, int cells = 1);

// Slope of the energy in eps at the Maxwell state:
// 2 sqrt2 * integral over [alpha0, beta0] of (W(s) - W(beta0) + sigma0 (s - beta0))^(1/2).
double asymptotic_S(const EosParams& p, const Landscape& land);

// J = integral of eta_y^2 + W''(v) eta^2 over the solution grid (periodic
// trapezoid). eta holds grid_size or grid_size + 1 samples. Without eta_y
// the derivative is taken by centered differences. Throws
// MeanViolationError when the mean of eta exceeds 1e-8 max|eta|.
double second_variation(const EosParams& p, const ViscousSolution& sol, const std::vector<double>& eta);
double second_variation(const EosParams& p, const ViscousSolution& sol, const std::vector<double>& eta,
                        const std::vector<double>& eta_y);

// Destabilizing direction for a solution with N >= 2 cells:
// eta = eta0 + t eta1, where eta0 = v_y on the single cell starting at the
// extremum y0 = -1/eps + shift (zero elsewhere) and eta1 is a cosine bump of
// height 1 at y0 minus a bump at the opposite extremum, both of width 0.1
// cell. J(t) = J(eta0) + 2 t B + t^2 J(eta1) is minimized over t.
struct VariationProbe {
    std::vector<double> eta, eta_y;
    double t = 0.0;
    // J(eta0) integrated by parts: eta0 solves eta'' = W''(v) eta on the
    // cell, leaving v_y v_yy at the two extremes
    double j_kernel = 0.0;
    double j_kernel_grid = 0.0;   // the same by trapezoid; roundoff-limited near 1e-15
    double coupling = 0.0;        // B = bilinear form of eta0 and eta1, -v_yy(y0) in exact arithmetic
    double j_bump = 0.0;          // J(eta1)
    double j_total = 0.0;         // J(eta0 + t eta1) = j_kernel + 2 t B + t^2 J(eta1)
    double j_total_grid = 0.0;    // same with j_kernel_grid
    double v_yy_at_start = 0.0;
};

VariationProbe destabilizing_probe(const EosParams& p, const ViscousSolution& sol);

struct EnergyEntry {
    std::string label;   // "constant", "N=1", "N=2", ...
    int cells = 0;
    bool solved = false;
    double energy = 0.0;
    double excess = 0.0;   // energy - leading
};

struct EnergyReport {
    double epsilon = 0.0;
    double vbar = 0.0;
    double e_value = 0.0;    // N = 1 energy (constant energy if N = 1 does not solve)
    double leading = 0.0;    // 2(-sigma0 vbar + lambda0)
    double slope_S = 0.0;
    double residual = 0.0;   // e_value - leading - eps S
    std::vector<EnergyEntry> comparisons;
    bool single_cell_minimal = false;   // N = 1 strictly below every other solved entry
};

// Energies of the constant state and every solvable N <= max_cells.
EnergyReport energy_ordering(const EosParams& p, const Landscape& land, double vbar, double eps, int max_cells,
                             int grid_size = 16384);

} // namespace vdw
