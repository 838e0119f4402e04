#pragma once

#include "vdw/eos.hpp"

#include <utility>
#include <vector>

namespace vdw {

enum class SharpKind { Constant, SinglePeak, SingleValley, GeneralTwoValue };

const char* to_string(SharpKind k);

struct Piece {
    double x0, x1;   // sub-interval of [-1, 1]
    double value;
};

// Piecewise-constant steady state on [-1, 1].
struct SharpProfile {
    SharpKind kind = SharpKind::Constant;
    double vbar = 0.0;
    double alpha0 = 0.0, beta0 = 0.0;
    double l1 = 0.0;       // total length of the liquid (alpha0) phase
    double l2 = 0.0;       // total length of the vapor (beta0) phase
    double offset = 0.0;   // length of the leading plateau (l11 for peaks, l21 for valleys)
    std::vector<Piece> pieces;
    std::vector<double> breakpoints;   // jump locations, increasing

    double value_at(double x) const;
    double mean() const;
};

// Two-phase profiles exist iff alpha0 < vbar < beta0.
bool exists_two_phase(const EosParams& p, const Landscape& land, double vbar);

// Phase lengths: l1 = 2(beta0 - vbar)/(beta0 - alpha0), l2 = 2 - l1.
std::pair<double, double> phase_lengths(const Landscape& land, double vbar);

// kind = SinglePeak: alpha0 on [-1, -1+offset), beta0 for length l2, alpha0 after.
// kind = SingleValley: beta0 on [-1, -1+offset), alpha0 for length l1, beta0 after.
// kind = Constant: v = vbar everywhere (offset ignored).
SharpProfile build_profile(const EosParams& p, const Landscape& land, double vbar, SharpKind kind, double offset);

// Arbitrary finite union of liquid intervals (total length l1); vapor elsewhere.
SharpProfile build_general(const EosParams& p, const Landscape& land, double vbar,
                           std::vector<std::pair<double, double>> liquid);

// Every jump value v satisfies p(v) = sigma0, and Phi + sigma0 v is continuous
// across each jump, both within 1e-10.
bool weierstrass_erdmann_check(const EosParams& p, const Landscape& land, const SharpProfile& prof);

// Integral over [-1, 1] of W(v) + sigma0 v with W(vbar) = 0.
double sharp_functional(const EosParams& p, const Landscape& land, const SharpProfile& prof);

struct SamplePoint {
    double x, v;
};
std::vector<SamplePoint> sample(const SharpProfile& prof, int n);

} // namespace vdw
