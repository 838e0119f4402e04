#pragma once

#include "vdw/eos.hpp"
#include "vdw/quadrature.hpp"

#include <string>
#include <utility>
#include <vector>

namespace vdw {

// Double-well potential normalized at the mean volume: W(v) = Phi(v) - Phi(vbar).
double potential_W(const EosParams& p, double vbar, double v);

// H(V) = p(vbar) V - a (1/(V + vbar) - 1/vbar) - R theta ln((V + vbar - b)/(vbar - b))
double double_well_H(const EosParams& p, double vbar, double V);

// f(v) = W(v) + sigma v - lambda
double first_integral_f(const EosParams& p, double vbar, double sigma, double lambda, double v);

// A closed orbit of 1/2 v_y^2 = f(v). Besides the plain values, the offsets
// from the Maxwell state are carried separately: at small epsilon they are
// exponentially small and far below the resolution of sigma0, alpha0, beta0.
struct FirstIntegral {
    double sigma = 0.0;
    double lambda = 0.0;        // gauge W(vbar) = 0
    double z1 = 0.0, z2 = 0.0;  // turning points

    double d_sigma = 0.0;       // sigma - sigma0
    double d_lambda = 0.0;      // lambda - lambda0
    double z1_gap = 0.0;        // z1 - alpha0
    double z2_gap = 0.0;        // z2 - beta0
    double alpha_sigma = 0.0, xi_sigma = 0.0, beta_sigma = 0.0;
    double slope1 = 0.0;        // f'(z1) > 0
    double slope2 = 0.0;        // -f'(z2) > 0
    double log_h1 = 0.0;        // log(lambda - W(alpha_sigma) - sigma alpha_sigma)
    double log_h2 = 0.0;        // log(lambda - W(beta_sigma) - sigma beta_sigma)
    // well whose level bounds lambda from below: "vapor" when sigma > sigma0
    std::string lower_bound_well;
    // turning point closer to the well bottom than double resolves; the
    // quadrature then treats the innermost stretch analytically
    bool deep1 = false, deep2 = false;
};

// Orbit from a plain (sigma, lambda) pair. Throws OutOfBandError or
// InadmissiblePairError naming the violated inequality.
FirstIntegral orbit_from_pair(const EosParams& p, const Landscape& land, double vbar, double sigma, double lambda);

// Orbit from the logarithms of the two well gaps h1, h2; keeps full
// relative precision in every offset. Gaps with log h below `deep_below`
// are handled in log form only (see FirstIntegral::deep1).
inline constexpr double kDeepLogGap = -300.0;
FirstIntegral orbit_from_log_gaps(const EosParams& p, const Landscape& land, double vbar, double log_h1,
                                  double log_h2, double deep_below = kDeepLogGap);

std::pair<double, double> turning_points(const EosParams& p, double vbar, double sigma, double lambda);
std::pair<double, double> turning_points(const EosParams& p, const Landscape& land, double vbar, double sigma,
                                         double lambda);

// Endpoint quadrature of s^m f^q over [z1, z2] built from the orbit's
// local expansions at both turning points.
EndpointQuadrature orbit_quadrature(const EosParams& p, const FirstIntegral& fi, double exponent,
                                    double rel_tol = 1e-12);

struct PeriodIntegrals {
    double I0;   // (1/sqrt 2) * integral of f^(-1/2)
    double I1;   // (1/sqrt 2) * integral of s f^(-1/2)
};

PeriodIntegrals period_integrals(const EosParams& p, const FirstIntegral& fi);
PeriodIntegrals period_integrals(const EosParams& p, const Landscape& land, double vbar, double sigma,
                                 double lambda);

// Exponential scaling of the well gaps: h_i = exp(mu_i k_i) exp(-c_i / eps).
struct HScaling {
    double B1, B2, mu1, mu2, c1, c2;
};

HScaling h_scaling(const EosParams& p, const Landscape& land, double vbar);

struct HCoordinates {
    double h1, h2, k1, k2, mu1, mu2, B1, B2, c1, c2;
};

// Gaps recomputed from (sigma, lambda) offsets and mapped to (k1, k2).
HCoordinates h_coordinates(const EosParams& p, const Landscape& land, double vbar, double eps,
                           const FirstIntegral& fi);

enum class ProfileKind { SinglePeak, SingleValley, MultiInterface, Constant };
enum class Orientation { Valley, Peak };

const char* to_string(ProfileKind k);
const char* to_string(Orientation o);

struct ProfileSample {
    double y, x, v;
    double dv;    // v_y from the first integral
    double d2v;   // v_yy = sigma - p(v)
};

struct ViscousSolution {
    double epsilon = 0.0;
    double vbar = 0.0;
    FirstIntegral first_integral;
    int cells = 1;                    // N
    int n_transitions = 2;            // 2N
    ProfileKind kind = ProfileKind::SingleValley;
    Orientation orientation = Orientation::Valley;
    double shift = 0.0;               // translation of the extremum center in y
    std::vector<ProfileSample> grid;  // grid_size + 1 samples, both ends of [-1/eps, 1/eps]
    double residual_period = 0.0;     // N eps I0 - 1
    double residual_mass = 0.0;       // N eps I1 - vbar
    double k1 = 0.0, k2 = 0.0;
    int newton_iterations = 0;
    int continuation_rungs = 0;

    int grid_size() const { return static_cast<int>(grid.size()) - 1; }
    double dy() const { return 2.0 / (epsilon * grid_size()); }
};

struct SolveOptions {
    Orientation orientation = Orientation::Valley;
    int grid_size = 4096;
    double shift = 0.0;
    double newton_tol = 1e-11;
    int max_newton = 60;
    double fd_step = 1e-6;
    double ladder_ratio = 0.8;
    int max_rungs = 40;
    bool reconstruct = true;
};

// Solution of the cell conditions N eps I0 = 1, N eps I1 = vbar.
struct CellSolution {
    FirstIntegral fi;
    double eps = 0.0;
    int cells = 1;
    double k1 = 0.0, k2 = 0.0;
    double residual_period = 0.0, residual_mass = 0.0;
    int iterations = 0;
    int rungs = 0;
};

// Newton in (k1, k2) with continuation in eps. `warm` (a solution at a
// nearby eps with the same N) seeds the predictor. Throws NoSolutionError.
CellSolution solve_cells(const EosParams& p, const Landscape& land, double vbar, double eps, int cells,
                         const SolveOptions& opt = {}, const CellSolution* warm = nullptr);

ViscousSolution solve_two_interface(const EosParams& p, const Landscape& land, double vbar, double eps,
                                    const SolveOptions& opt = {});
ViscousSolution solve_2N(const EosParams& p, const Landscape& land, double vbar, double eps, int cells,
                         const SolveOptions& opt = {});

// Samples the orbit on a uniform y-grid of [-1/eps, 1/eps] (grid_size + 1
// points). Valley (or peak) centers sit at y = shift + (m + 1/2) 2/(N eps) - 1/eps.
ViscousSolution reconstruct_profile(const EosParams& p, double vbar, double eps, const FirstIntegral& fi,
                                    Orientation orientation, int grid_size, int cells = 1, double shift = 0.0);

ViscousSolution constant_solution(const EosParams& p, double vbar, double eps, int grid_size);

// max of p' over [alpha, beta]
double max_spinodal_slope(const EosParams& p, const Landscape& land);
// eps* = sqrt(max p') / pi; above it only the constant state is steady
double triviality_threshold(const EosParams& p, const Landscape& land);

struct SteadyResiduals {
    double ode = 0.0;              // max |v_yy + p(v) - sigma|, centered differences
    double first_integral = 0.0;   // max |v_y^2 / 2 - f(v)|, centered differences
    double mean = 0.0;             // |periodic mean - vbar|
    double periodicity = 0.0;      // |v(-1/eps) - v(1/eps)|
    bool in_range = true;          // z1 <= v <= z2
    int monotonicity_changes = 0;  // 2N for an N-cell orbit
};

SteadyResiduals steady_residuals(const EosParams& p, const ViscousSolution& sol);

} // namespace vdw
