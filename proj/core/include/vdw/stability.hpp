#pragma once

#include "vdw/eos.hpp"

#include <vector>

namespace vdw {

// dp/drho at density rho0 = 1/v: -v^2 p'(v)
double pressure_density_slope(const EosParams& p, double rho0);

// Largest real part of the eigenvalues of the linearized constant-state
// matrix A = [[-eps n^2, i n rho0], [(i n / rho0) p_rho, -n^2]], from its
// trace -(eps + 1) n^2 and determinant eps n^4 + p_rho n^2.
double growth_rate(const EosParams& p, double rho0, double eps_rho, int n);

struct Mode {
    int n;
    double growth;
};

struct ModeSpectrum {
    double rho0 = 0.0;
    double eps_rho = 0.0;
    double pressure_slope = 0.0;   // dp/drho at rho0
    double cutoff = 0.0;           // sqrt(-p_rho / eps) when p_rho < 0, else 0
    std::vector<Mode> modes;       // n = 0 .. n_max
    int largest_unstable = 0;      // 0 when every mode is neutral or damped
    bool matches_determinant = true;   // growth > 0 exactly when eps n^4 + p_rho n^2 < 0
};

ModeSpectrum unstable_band(const EosParams& p, double rho0, double eps_rho, int n_max);

} // namespace vdw
