#pragma once

#include "vdw/eos.hpp"

namespace vdw {

// Equal-area Maxwell construction; fills every Landscape field.
// Rejects temperatures within 1e-8 (relative) of theta_c.
Landscape construct(const EosParams& p);

// Signed area between the isotherm and the line p = sigma across the
// outer roots, integral over (alpha_sigma, beta_sigma) of (p - sigma). Closed form.
double equal_area_residual(const EosParams& p, const Landscape& land, double sigma);

// Maxwell potential level W(alpha0) + sigma0 alpha0 with W normalized so W(vbar) = 0.
double maxwell_level(const EosParams& p, const Landscape& land, double vbar);

enum class Region { Unstable, Metastable, Stable };

struct RegionLabel {
    Region tag;
    bool in_maxwell;
};

// Partition of (b, inf) into unstable (alpha, beta), metastable
// (alpha0, alpha] U [beta, beta0) and stable (b, alpha0] U [beta0, inf).
// Points within 1e-10 of a boundary are snapped onto it.
RegionLabel classify(const EosParams& p, const Landscape& land, double v);

const char* to_string(Region r);

} // namespace vdw
