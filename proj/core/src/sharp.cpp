#include "vdw/sharp.hpp"

#include "vdw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vdw {

const char* to_string(SharpKind k)
{
    switch (k) {
    case SharpKind::Constant:
        return "constant";
    case SharpKind::SinglePeak:
        return "single_peak";
    case SharpKind::SingleValley:
        return "single_valley";
    case SharpKind::GeneralTwoValue:
        return "general_two_value";
    }
    return "?";
}

double SharpProfile::value_at(double x) const
{
    for (const Piece& pc : pieces)
        if (x >= pc.x0 && x <= pc.x1)
            return pc.value;
    return pieces.empty() ? vbar : pieces.back().value;
}

double SharpProfile::mean() const
{
    double s = 0.0;
    for (const Piece& pc : pieces)
        s += (pc.x1 - pc.x0) * pc.value;
    return 0.5 * s;
}

bool exists_two_phase(const EosParams& p, const Landscape& land, double vbar)
{
    if (!(vbar > p.b))
        throw DomainError("exists_two_phase: vbar must exceed b");
    return vbar > land.alpha0 && vbar < land.beta0;
}

std::pair<double, double> phase_lengths(const Landscape& land, double vbar)
{
    double w = land.beta0 - land.alpha0;
    double l1 = 2.0 * (land.beta0 - vbar) / w;
    double l2 = 2.0 * (vbar - land.alpha0) / w;
    return {l1, l2};
}

namespace {

SharpProfile two_phase_base(const EosParams& p, const Landscape& land, double vbar, SharpKind kind)
{
    if (!exists_two_phase(p, land, vbar))
        throw InfeasibleError("vbar = " + std::to_string(vbar) + " outside the Maxwell interval (" +
                              std::to_string(land.alpha0) + ", " + std::to_string(land.beta0) + ")");
    SharpProfile prof;
    prof.kind = kind;
    prof.vbar = vbar;
    prof.alpha0 = land.alpha0;
    prof.beta0 = land.beta0;
    auto [l1, l2] = phase_lengths(land, vbar);
    prof.l1 = l1;
    prof.l2 = l2;
    return prof;
}

void add_piece(SharpProfile& prof, double x0, double x1, double value)
{
    if (x1 > x0)
        prof.pieces.push_back({x0, x1, value});
}

void collect_breakpoints(SharpProfile& prof)
{
    prof.breakpoints.clear();
    for (std::size_t i = 0; i + 1 < prof.pieces.size(); ++i)
        if (prof.pieces[i].value != prof.pieces[i + 1].value)
            prof.breakpoints.push_back(prof.pieces[i].x1);
    // the periodic seam at x = -1 ~ 1 is a jump when the end values differ
    if (prof.pieces.size() > 1 && prof.pieces.front().value != prof.pieces.back().value)
        prof.breakpoints.insert(prof.breakpoints.begin(), -1.0);
}

} // namespace

SharpProfile build_profile(const EosParams& p, const Landscape& land, double vbar, SharpKind kind, double offset)
{
    if (kind == SharpKind::Constant) {
        if (!(vbar > p.b))
            throw DomainError("build_profile: vbar must exceed b");
        SharpProfile prof;
        prof.kind = kind;
        prof.vbar = vbar;
        prof.alpha0 = land.alpha0;
        prof.beta0 = land.beta0;
        prof.pieces.push_back({-1.0, 1.0, vbar});
        return prof;
    }
    if (kind == SharpKind::GeneralTwoValue)
        throw DomainError("build_profile: use build_general for arbitrary phase sets");

    SharpProfile prof = two_phase_base(p, land, vbar, kind);
    bool peak = kind == SharpKind::SinglePeak;
    double lead_len = peak ? prof.l1 : prof.l2;    // phase that leads and trails
    double mid_len = peak ? prof.l2 : prof.l1;
    double outer = peak ? prof.alpha0 : prof.beta0;
    double inner = peak ? prof.beta0 : prof.alpha0;
    if (!(offset >= 0.0 && offset <= lead_len))
        throw OffsetError("interface offset " + std::to_string(offset) + " outside [0, " + std::to_string(lead_len) + "]");
    prof.offset = offset;
    double j1 = -1.0 + offset;
    double j2 = std::min(1.0, j1 + mid_len);
    add_piece(prof, -1.0, j1, outer);
    add_piece(prof, j1, j2, inner);
    add_piece(prof, j2, 1.0, outer);
    collect_breakpoints(prof);
    return prof;
}

SharpProfile build_general(const EosParams& p, const Landscape& land, double vbar,
                           std::vector<std::pair<double, double>> liquid)
{
    SharpProfile prof = two_phase_base(p, land, vbar, SharpKind::GeneralTwoValue);
    std::sort(liquid.begin(), liquid.end());
    double total = 0.0, cursor = -1.0;
    for (auto [x0, x1] : liquid) {
        if (!(x0 >= cursor && x1 > x0 && x1 <= 1.0))
            throw OffsetError("liquid intervals must be disjoint, non-empty and inside [-1, 1]");
        add_piece(prof, cursor, x0, prof.beta0);
        add_piece(prof, x0, x1, prof.alpha0);
        total += x1 - x0;
        cursor = x1;
    }
    add_piece(prof, cursor, 1.0, prof.beta0);
    if (std::fabs(total - prof.l1) > 1e-12)
        throw OffsetError("liquid intervals must have total length l1 = " + std::to_string(prof.l1));
    collect_breakpoints(prof);
    return prof;
}

bool weierstrass_erdmann_check(const EosParams& p, const Landscape& land, const SharpProfile& prof)
{
    const double tol = 1e-10;
    for (std::size_t i = 0; i + 1 < prof.pieces.size(); ++i) {
        double u = prof.pieces[i].value, w = prof.pieces[i + 1].value;
        if (u == w)
            continue;
        // W' = -p, so W'(v) = -sigma0 means p(v) = sigma0
        if (std::fabs(pressure(p, u) - land.sigma0) > tol || std::fabs(pressure(p, w) - land.sigma0) > tol)
            return false;
        double gu = potential_abs(p, u) + land.sigma0 * u;
        double gw = potential_abs(p, w) + land.sigma0 * w;
        if (std::fabs(gu - gw) > tol)
            return false;
    }
    return true;
}

double sharp_functional(const EosParams& p, const Landscape& land, const SharpProfile& prof)
{
    double ref = potential_abs(p, prof.vbar);
    double s = 0.0;
    for (const Piece& pc : prof.pieces)
        s += (pc.x1 - pc.x0) * (potential_abs(p, pc.value) - ref + land.sigma0 * pc.value);
    return s;
}

std::vector<SamplePoint> sample(const SharpProfile& prof, int n)
{
    if (n < 2)
        throw DomainError("sample: need at least two points");
    std::vector<SamplePoint> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        double x = -1.0 + 2.0 * i / (n - 1);
        out.push_back({x, prof.value_at(x)});
    }
    return out;
}

} // namespace vdw
