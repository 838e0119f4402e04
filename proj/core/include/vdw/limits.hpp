#pragma once

#include "vdw/eos.hpp"
#include "vdw/viscous.hpp"

#include <array>
#include <string>
#include <vector>

namespace vdw {

// Points at which the pointwise distance to the sharp profile is tracked.
inline constexpr std::array<double, 5> kProbePoints{-0.9, -0.5, 0.0, 0.5, 0.9};

struct SweepRow {
    double eps = 0.0;
    double sigma = 0.0, lambda = 0.0;
    double z1 = 0.0, z2 = 0.0;
    double gap1 = 0.0;     // |z1 - alpha0|
    double gap2 = 0.0;     // |z2 - beta0|
    double eps_T1 = 0.0;   // eps * time spent within eps of z1
    double eps_T2 = 0.0;   // eps * time spent within eps of z2
    double sup_distance = 0.0;   // away from the interface bands
    std::array<double, kProbePoints.size()> probe_distance{};   // NaN inside a band
    double energy = 0.0;
    double energy_grid = 0.0;   // grid quadrature path of the same energy
    double excess = 0.0;   // energy - 2(-sigma0 vbar + lambda0)
    double residual_period = 0.0, residual_mass = 0.0;
    double k1 = 0.0, k2 = 0.0;
    int newton_iterations = 0;
    bool checks_passed = false;
};

struct SweepResult {
    double vbar = 0.0;
    Orientation orientation = Orientation::Valley;
    double l1 = 0.0, l2 = 0.0;
    std::vector<double> eps_ladder;   // rungs actually solved, decreasing
    std::vector<SweepRow> rows;
    bool truncated = false;           // continuation failed before eps_end
    std::string warning;
    double predicted_C1 = 0.0, predicted_C2 = 0.0;   // leading-order decay rates of the gaps
};

// Solves eps_start, eps_start*ratio, ... down to eps_end with warm starts and
// compares every rung with the sharp profile of the same kind whose plateau
// is centred on the viscous extremum. Bands of half-width 5 eps |ln eps|
// around the sharp jumps are excluded from the distance.
SweepResult run_sweep(const EosParams& p, const Landscape& land, double vbar, double eps_start, double eps_end,
                      double ratio, Orientation orientation, int grid_size = 16384);

struct LineFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct DecayFit {
    double C1 = 0.0, C2 = 0.0;     // minus the slopes of log gap_i against 1/eps
    double r2_1 = 0.0, r2_2 = 0.0;
    double predicted_C1 = 0.0, predicted_C2 = 0.0;
};

// Affine fits of log|z1 - alpha0| and log|z2 - beta0| against 1/eps.
// Throws InsufficientDataError below 4 rows or with repeated eps.
DecayFit fit_decay(const SweepResult& result);

// Least-squares slope of (energy - leading) against eps.
LineFit fit_energy_slope(const SweepResult& result);

} // namespace vdw
