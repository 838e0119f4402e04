#include "cli.hpp"

#include "vdw/energy.hpp"
#include "vdw/errors.hpp"
#include "vdw/limits.hpp"
#include "vdw/maxwell.hpp"
#include "vdw/sharp.hpp"
#include "vdw/stability.hpp"
#include "vdw/viscous.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <vector>

namespace vdw::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// null for non-finite values (JSON has no infinity)
Json num(double x)
{
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

std::string fmt17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class Csv {
public:
    Csv(const fs::path& path, const std::vector<std::string>& header) : out_(path)
    {
        if (!out_)
            throw Error("cannot open " + path.string() + " for writing");
        for (std::size_t i = 0; i < header.size(); ++i)
            out_ << (i ? "," : "") << header[i];
        out_ << '\n';
    }

    void row(const std::vector<double>& values)
    {
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << fmt17(values[i]);
        out_ << '\n';
    }

    void raw(const std::string& line) { out_ << line << '\n'; }

private:
    std::ofstream out_;
};

void write_json(const fs::path& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

fs::path prepare_output(const RunConfig& cfg)
{
    fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    return dir;
}

Json params_json(const RunConfig& cfg)
{
    return Json{{"a", cfg.eos.a}, {"b", cfg.eos.b}, {"R", cfg.eos.R}, {"theta", cfg.eos.theta}, {"seed", cfg.seed}};
}

Json landscape_json(const EosParams& p, const Landscape& l)
{
    Json j;
    j["theta_c"] = critical_temperature(p);
    j["alpha"] = l.alpha;
    j["beta"] = l.beta;
    j["alpha0"] = l.alpha0;
    j["beta0"] = l.beta0;
    j["alpha_bar"] = l.alpha_bar;
    j["beta_bar"] = num(l.beta_bar);
    j["beta_bar_finite"] = l.beta_bar_finite();
    j["sigma_lo"] = l.sigma_lo;
    j["sigma_hi"] = l.sigma_hi;
    j["sigma0"] = l.sigma0;
    j["lambda0_abs"] = l.lambda0_abs;
    return j;
}

double resolve_vbar(const RunConfig& cfg, const Landscape& l)
{
    return cfg.vbar ? *cfg.vbar : 0.5 * (l.alpha0 + l.beta0);
}

Orientation orientation_of(const RunConfig& cfg)
{
    return cfg.kind == "peak" ? Orientation::Peak : Orientation::Valley;
}

void require_two_phase(const Landscape& l, double vbar)
{
    if (!(vbar > l.alpha0 && vbar < l.beta0))
        throw InfeasibleError("vbar = " + fmt17(vbar) + " must lie strictly inside the Maxwell interval (" +
                              fmt17(l.alpha0) + ", " + fmt17(l.beta0) + ")");
}

Json first_integral_json(const FirstIntegral& fi)
{
    Json j;
    j["sigma"] = fi.sigma;
    j["lambda"] = fi.lambda;
    j["sigma_minus_sigma0"] = fi.d_sigma;
    j["lambda_minus_lambda0"] = fi.d_lambda;
    j["z1"] = fi.z1;
    j["z2"] = fi.z2;
    j["z1_minus_alpha0"] = fi.z1_gap;
    j["z2_minus_beta0"] = fi.z2_gap;
    j["alpha_sigma"] = fi.alpha_sigma;
    j["xi_sigma"] = fi.xi_sigma;
    j["beta_sigma"] = fi.beta_sigma;
    j["log_h1"] = fi.log_h1;
    j["log_h2"] = fi.log_h2;
    j["lower_bound_well"] = fi.lower_bound_well;
    return j;
}

int invalid(const std::exception& e)
{
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
}

template <class T>
void load(const Json& j, const char* key, T& into)
{
    if (j.contains(key))
        into = j.at(key).get<T>();
}

} // namespace

void apply_config_file(RunConfig& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot read config file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw DomainError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object())
        throw DomainError("config file must hold a flat JSON object");
    static const std::vector<std::string> known{"a", "b", "R", "theta", "vbar", "epsilon", "eps_start",
                                                "eps_end", "eps_ratio", "kind", "N", "grid", "out", "seed",
                                                "n_max", "rho0", "eps_rho", "max_cells"};
    for (const auto& item : j.items())
        if (std::find(known.begin(), known.end(), item.key()) == known.end())
            throw DomainError("unknown config key '" + item.key() + "'");
    try {
        load(j, "a", cfg.eos.a);
        load(j, "b", cfg.eos.b);
        load(j, "R", cfg.eos.R);
        load(j, "theta", cfg.eos.theta);
        if (j.contains("vbar"))
            cfg.vbar = j.at("vbar").get<double>();
        load(j, "epsilon", cfg.epsilon);
        load(j, "eps_start", cfg.eps_start);
        load(j, "eps_end", cfg.eps_end);
        load(j, "eps_ratio", cfg.eps_ratio);
        load(j, "kind", cfg.kind);
        load(j, "N", cfg.cells);
        load(j, "grid", cfg.grid_size);
        load(j, "out", cfg.output_dir);
        load(j, "seed", cfg.seed);
        load(j, "n_max", cfg.n_max);
        if (j.contains("rho0"))
            cfg.rho0 = j.at("rho0").get<double>();
        load(j, "eps_rho", cfg.eps_rho);
        load(j, "max_cells", cfg.max_cells);
    } catch (const Json::exception& e) {
        throw DomainError(std::string("config field has the wrong type: ") + e.what());
    }
}

void validate(const RunConfig& cfg)
{
    auto positive = [](double x, const char* name) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw DomainError(std::string(name) + " must be positive and finite");
    };
    positive(cfg.eos.a, "a");
    positive(cfg.eos.b, "b");
    positive(cfg.eos.R, "R");
    positive(cfg.eos.theta, "theta");
    if (!is_subcritical(cfg.eos))
        throw SupercriticalError("temperature must be subcritical: need 0 < theta < theta_c = 8a/(27Rb) = " +
                                 fmt17(critical_temperature(cfg.eos)));
    if (cfg.vbar && !(*cfg.vbar > cfg.eos.b && std::isfinite(*cfg.vbar)))
        throw DomainError("vbar must exceed b");
    positive(cfg.epsilon, "epsilon");
    positive(cfg.eps_start, "eps-start");
    positive(cfg.eps_end, "eps-end");
    if (cfg.eps_end > cfg.eps_start)
        throw DomainError("eps-end must not exceed eps-start");
    if (!(cfg.eps_ratio > 0.0 && cfg.eps_ratio < 1.0))
        throw DomainError("eps-ratio must lie in (0, 1)");
    if (cfg.kind != "peak" && cfg.kind != "valley")
        throw DomainError("kind must be 'peak' or 'valley'");
    if (cfg.cells < 1)
        throw DomainError("N must be at least 1");
    if (cfg.grid_size < 64)
        throw DomainError("grid must be at least 64");
    if (cfg.n_max < 0)
        throw DomainError("n-max must be non-negative");
    if (cfg.rho0 && !(*cfg.rho0 > 0.0 && *cfg.rho0 < 1.0 / cfg.eos.b))
        throw DomainError("rho0 must satisfy 0 < rho0 < 1/b");
    positive(cfg.eps_rho, "eps-rho");
    if (cfg.max_cells < 1)
        throw DomainError("max-cells must be at least 1");
}

int cmd_landscape(const RunConfig& cfg)
{
    Landscape l = construct(cfg.eos);
    fs::path dir = prepare_output(cfg);
    const double b = cfg.eos.b;
    bool ordered = b < l.alpha_bar && l.alpha_bar < l.alpha0 && l.alpha0 < l.alpha && l.alpha < l.beta &&
                   l.beta < l.beta0 && l.beta0 < l.beta_bar;

    Json j;
    j["command"] = "landscape";
    j["params"] = params_json(cfg);
    j["landscape"] = landscape_json(cfg.eos, l);
    j["equal_area_residual"] = equal_area_residual(cfg.eos, l, l.sigma0);
    j["ordering_holds"] = ordered;
    write_json(dir / "landscape.json", j);

    const double vmax = l.beta_bar_finite() ? 1.5 * l.beta_bar : 4.0 * l.beta0;
    Csv csv(dir / "isotherm.csv", {"v", "p"});
    const int n = 2000;
    for (int k = 1; k <= n; ++k) {
        double v = b + (vmax - b) * k / n;
        csv.row({v, pressure(cfg.eos, v)});
    }
    std::cout << "landscape: sigma0 = " << fmt17(l.sigma0) << ", alpha0 = " << fmt17(l.alpha0)
              << ", beta0 = " << fmt17(l.beta0) << '\n';
    return kOk;
}

int cmd_sharp(const RunConfig& cfg)
{
    Landscape l = construct(cfg.eos);
    double vbar = resolve_vbar(cfg, l);
    fs::path dir = prepare_output(cfg);
    bool two_phase = exists_two_phase(cfg.eos, l, vbar);

    SharpProfile prof;
    if (two_phase) {
        SharpKind kind = cfg.kind == "peak" ? SharpKind::SinglePeak : SharpKind::SingleValley;
        auto [l1, l2] = phase_lengths(l, vbar);
        double plateau = kind == SharpKind::SinglePeak ? l2 : l1;
        prof = build_profile(cfg.eos, l, vbar, kind, 1.0 - 0.5 * plateau);
    } else {
        prof = build_profile(cfg.eos, l, vbar, SharpKind::Constant, 0.0);
    }
    RegionLabel region = classify(cfg.eos, l, vbar);

    Json j;
    j["command"] = "sharp";
    j["params"] = params_json(cfg);
    j["vbar"] = vbar;
    j["region"] = to_string(region.tag);
    j["feasible"] = two_phase;
    j["verdict"] = two_phase ? "two-phase" : "stable/single-phase";
    j["kind"] = to_string(prof.kind);
    j["alpha0"] = l.alpha0;
    j["beta0"] = l.beta0;
    j["sigma0"] = l.sigma0;
    j["l1"] = prof.l1;
    j["l2"] = prof.l2;
    j["offset"] = prof.offset;
    j["breakpoints"] = prof.breakpoints;
    j["mean"] = prof.mean();
    j["weierstrass_erdmann"] = two_phase ? weierstrass_erdmann_check(cfg.eos, l, prof) : true;
    j["functional"] = sharp_functional(cfg.eos, l, prof);
    write_json(dir / "sharp.json", j);

    Csv csv(dir / "sharp.csv", {"x", "v"});
    for (const SamplePoint& s : sample(prof, cfg.grid_size))
        csv.row({s.x, s.v});
    std::cout << "sharp: " << j["verdict"].get<std::string>() << ", l1 = " << fmt17(prof.l1)
              << ", l2 = " << fmt17(prof.l2) << '\n';
    return kOk;
}

int cmd_solve(const RunConfig& cfg)
{
    Landscape l = construct(cfg.eos);
    double vbar = resolve_vbar(cfg, l);
    require_two_phase(l, vbar);
    if (cfg.grid_size % cfg.cells != 0)
        throw DomainError("grid must be a multiple of N");

    SolveOptions opt;
    opt.orientation = orientation_of(cfg);
    opt.grid_size = cfg.grid_size;
    ViscousSolution sol = solve_2N(cfg.eos, l, vbar, cfg.epsilon, cfg.cells, opt);
    SteadyResiduals res = steady_residuals(cfg.eos, sol);
    EnergyPaths paths = energy_paths(cfg.eos, sol);
    double path_gap = std::fabs(paths.closed - paths.grid) / std::fabs(paths.closed);
    double leading = energy_leading(cfg.eos, l, vbar);
    double excess = energy_excess(cfg.eos, l, vbar, cfg.epsilon, sol.first_integral, cfg.cells);
    double S = asymptotic_S(cfg.eos, l);
    fs::path dir = prepare_output(cfg);

    Json j;
    j["command"] = "solve";
    j["params"] = params_json(cfg);
    j["vbar"] = vbar;
    j["epsilon"] = cfg.epsilon;
    j["N"] = cfg.cells;
    j["kind"] = to_string(sol.kind);
    j["orientation"] = to_string(sol.orientation);
    j["grid"] = cfg.grid_size;
    j["first_integral"] = first_integral_json(sol.first_integral);
    j["k1"] = sol.k1;
    j["k2"] = sol.k2;
    j["newton_iterations"] = sol.newton_iterations;
    j["continuation_rungs"] = sol.continuation_rungs;
    j["triviality_threshold"] = triviality_threshold(cfg.eos, l);
    j["residuals"] = Json{{"period", sol.residual_period},
                          {"mass", sol.residual_mass},
                          {"ode", res.ode},
                          {"first_integral", res.first_integral},
                          {"mean", res.mean},
                          {"periodicity", res.periodicity},
                          {"in_range", res.in_range},
                          {"monotonicity_changes", res.monotonicity_changes}};
    j["energy"] = Json{{"e_value", paths.closed},
                       {"grid_path", paths.grid},
                       {"paths_relative_gap", path_gap},
                       {"paths_agree", path_gap <= 1e-6},
                       {"leading", leading},
                       {"excess", excess},
                       {"slope_S", S},
                       {"residual", excess - cfg.epsilon * S}};
    write_json(dir / "solution.json", j);

    Csv csv(dir / "solution.csv", {"y", "x", "v", "v_y", "v_yy"});
    for (const ProfileSample& s : sol.grid)
        csv.row({s.y, s.x, s.v, s.dv, s.d2v});
    std::cout << "solve: sigma = " << fmt17(sol.first_integral.sigma)
              << ", lambda = " << fmt17(sol.first_integral.lambda) << ", residuals " << fmt17(sol.residual_period)
              << ", " << fmt17(sol.residual_mass) << '\n';
    return kOk;
}

int cmd_sweep(const RunConfig& cfg)
{
    Landscape l = construct(cfg.eos);
    double vbar = resolve_vbar(cfg, l);
    require_two_phase(l, vbar);
    SweepResult r = run_sweep(cfg.eos, l, vbar, cfg.eps_start, cfg.eps_end, cfg.eps_ratio, orientation_of(cfg),
                              cfg.grid_size);
    fs::path dir = prepare_output(cfg);

    Csv csv(dir / "sweep.csv", {"eps", "sigma", "lambda", "z1", "z2", "gap1", "gap2", "eps_T1", "eps_T2",
                                "sup_distance", "probe_m0.9", "probe_m0.5", "probe_0", "probe_0.5", "probe_0.9",
                                "energy", "energy_grid", "excess", "residual_period", "residual_mass", "checks_passed"});
    for (const SweepRow& w : r.rows) {
        std::vector<double> v{w.eps,    w.sigma,  w.lambda, w.z1,     w.z2,          w.gap1, w.gap2,
                              w.eps_T1, w.eps_T2, w.sup_distance};
        v.insert(v.end(), w.probe_distance.begin(), w.probe_distance.end());
        v.insert(v.end(), {w.energy, w.energy_grid, w.excess, w.residual_period, w.residual_mass, w.checks_passed ? 1.0 : 0.0});
        csv.row(v);
    }

    Json j;
    j["command"] = "sweep";
    j["params"] = params_json(cfg);
    j["vbar"] = vbar;
    j["orientation"] = to_string(r.orientation);
    j["l1"] = r.l1;
    j["l2"] = r.l2;
    j["eps_ladder"] = r.eps_ladder;
    j["rows"] = r.rows.size();
    j["truncated"] = r.truncated;
    j["warning"] = r.warning;
    bool all_checks = true;
    for (const SweepRow& w : r.rows)
        all_checks = all_checks && w.checks_passed;
    j["all_rows_pass_checks"] = all_checks;
    if (r.rows.size() >= 4) {
        DecayFit f = fit_decay(r);
        j["decay_fit"] = Json{{"C1", f.C1},
                              {"C2", f.C2},
                              {"r2_1", f.r2_1},
                              {"r2_2", f.r2_2},
                              {"predicted_C1", f.predicted_C1},
                              {"predicted_C2", f.predicted_C2}};
        LineFit e = fit_energy_slope(r);
        double S = asymptotic_S(cfg.eos, l);
        j["energy_fit"] = Json{{"slope", e.slope}, {"intercept", e.intercept}, {"slope_S", S},
                               {"relative_error", (e.slope - S) / S}};
    } else {
        j["decay_fit"] = nullptr;
        j["energy_fit"] = nullptr;
    }
    if (!r.rows.empty()) {
        const SweepRow& last = r.rows.back();
        j["final"] = Json{{"eps", last.eps},
                          {"sup_distance", last.sup_distance},
                          {"eps_T1_over_l1", last.eps_T1 / r.l1},
                          {"eps_T2_over_l2", last.eps_T2 / r.l2}};
    }
    write_json(dir / "sweep.json", j);
    if (r.truncated)
        std::cerr << "warning: ladder truncated: " << r.warning << '\n';
    std::cout << "sweep: " << r.rows.size() << " rungs solved\n";
    return kOk;
}

int cmd_stability(const RunConfig& cfg)
{
    Landscape l = construct(cfg.eos);
    double rho0 = cfg.rho0 ? *cfg.rho0 : 1.0 / resolve_vbar(cfg, l);
    ModeSpectrum s = unstable_band(cfg.eos, rho0, cfg.eps_rho, cfg.n_max);
    fs::path dir = prepare_output(cfg);

    Csv csv(dir / "spectrum.csv", {"n", "growth"});
    for (const Mode& m : s.modes)
        csv.row({static_cast<double>(m.n), m.growth});
    Json j;
    j["command"] = "stability";
    j["params"] = params_json(cfg);
    j["rho0"] = s.rho0;
    j["eps_rho"] = s.eps_rho;
    j["pressure_slope"] = s.pressure_slope;
    j["cutoff"] = s.cutoff;
    j["largest_unstable"] = s.largest_unstable;
    j["expected_largest_unstable"] = s.cutoff > 0.0 ? static_cast<int>(std::ceil(s.cutoff)) - 1 : 0;
    j["matches_determinant"] = s.matches_determinant;
    j["n_max"] = cfg.n_max;
    write_json(dir / "stability.json", j);
    std::cout << "stability: cutoff = " << fmt17(s.cutoff) << ", largest unstable n = " << s.largest_unstable
              << '\n';
    return kOk;
}

int cmd_energy_ordering(const RunConfig& cfg)
{
    Landscape l = construct(cfg.eos);
    double vbar = resolve_vbar(cfg, l);
    require_two_phase(l, vbar);
    EnergyReport r = energy_ordering(cfg.eos, l, vbar, cfg.epsilon, cfg.max_cells, cfg.grid_size);
    fs::path dir = prepare_output(cfg);

    Json comparisons = Json::array();
    Csv csv(dir / "energy.csv", {"label", "cells", "solved", "energy", "excess"});
    for (const EnergyEntry& e : r.comparisons) {
        comparisons.push_back(Json{{"label", e.label},
                                   {"cells", e.cells},
                                   {"solved", e.solved},
                                   {"energy", e.solved ? num(e.energy) : Json(nullptr)},
                                   {"excess", e.solved ? num(e.excess) : Json(nullptr)}});
        csv.raw(e.label + "," + std::to_string(e.cells) + "," + (e.solved ? "1" : "0") + "," +
                (e.solved ? fmt17(e.energy) : "nan") + "," + (e.solved ? fmt17(e.excess) : "nan"));
    }
    Json j;
    j["command"] = "energy-ordering";
    j["params"] = params_json(cfg);
    j["vbar"] = vbar;
    j["epsilon"] = r.epsilon;
    j["e_value"] = r.e_value;
    j["leading"] = r.leading;
    j["slope_S"] = r.slope_S;
    j["residual"] = r.residual;
    j["comparisons"] = comparisons;
    j["single_cell_minimal"] = r.single_cell_minimal;
    write_json(dir / "energy.json", j);
    std::cout << "energy-ordering: N=1 minimal = " << (r.single_cell_minimal ? "yes" : "no") << '\n';
    return kOk;
}

int run(int argc, char** argv)
{
    CLI::App app{"Steady phase-transition profiles for a van der Waals fluid"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<double> theta, vbar, epsilon, eps_start, eps_end, eps_ratio, rho0, eps_rho;
    std::optional<std::string> kind, out;
    std::optional<int> cells, grid, n_max, max_cells;
    std::optional<unsigned> seed;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat JSON config; flags override its fields");
        sub->add_option("--theta", theta, "temperature");
        sub->add_option("--vbar", vbar, "mean specific volume");
        sub->add_option("--epsilon", epsilon, "viscosity parameter");
        sub->add_option("--eps-start", eps_start, "first rung of the eps ladder");
        sub->add_option("--eps-end", eps_end, "smallest eps of the ladder");
        sub->add_option("--eps-ratio", eps_ratio, "ladder ratio in (0, 1)");
        sub->add_option("--kind", kind, "profile orientation: peak or valley");
        sub->add_option("--N", cells, "number of cells (2N interfaces)");
        sub->add_option("--grid", grid, "grid intervals on the period");
        sub->add_option("--out", out, "output directory");
        sub->add_option("--seed", seed, "seed recorded with the run");
        sub->add_option("--n-max", n_max, "largest wavenumber for stability");
        sub->add_option("--rho0", rho0, "base density for stability (default 1/vbar)");
        sub->add_option("--eps-rho", eps_rho, "density viscosity for stability");
        sub->add_option("--max-cells", max_cells, "largest N compared by energy-ordering");
    };

    struct Entry {
        const char* name;
        const char* help;
        int (*fn)(const RunConfig&);
    };
    const Entry entries[] = {
        {"landscape", "pressure landscape and Maxwell construction", cmd_landscape},
        {"sharp", "sharp-interface profile", cmd_sharp},
        {"solve", "viscous profile with 2N interfaces", cmd_solve},
        {"sweep", "eps ladder towards the sharp limit", cmd_sweep},
        {"stability", "linear stability of a constant state", cmd_stability},
        {"energy-ordering", "energies of the constant and N-cell profiles", cmd_energy_ordering},
    };
    std::vector<CLI::App*> subs;
    for (const Entry& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        common(sub);
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty())
            apply_config_file(cfg, config_path);
        if (theta)
            cfg.eos.theta = *theta;
        if (vbar)
            cfg.vbar = vbar;
        if (epsilon)
            cfg.epsilon = *epsilon;
        if (eps_start)
            cfg.eps_start = *eps_start;
        if (eps_end)
            cfg.eps_end = *eps_end;
        if (eps_ratio)
            cfg.eps_ratio = *eps_ratio;
        if (kind)
            cfg.kind = *kind;
        if (cells)
            cfg.cells = *cells;
        if (grid)
            cfg.grid_size = *grid;
        if (out)
            cfg.output_dir = *out;
        if (seed)
            cfg.seed = *seed;
        if (n_max)
            cfg.n_max = *n_max;
        if (rho0)
            cfg.rho0 = rho0;
        if (eps_rho)
            cfg.eps_rho = *eps_rho;
        if (max_cells)
            cfg.max_cells = *max_cells;
        validate(cfg);
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed())
                return entries[i].fn(cfg);
        return kInvalidInput;
    } catch (const NoSolutionError& e) {
        std::cerr << "error: " << e.what() << '\n'
                  << "best residual: " << fmt17(e.residual()) << '\n'
                  << "triviality threshold eps*: " << fmt17(e.eps_star()) << '\n';
        return kNoSolution;
    } catch (const DomainError& e) {
        return invalid(e);
    } catch (const SupercriticalError& e) {
        return invalid(e);
    } catch (const InfeasibleError& e) {
        return invalid(e);
    } catch (const OutOfBandError& e) {
        return invalid(e);
    } catch (const InadmissiblePairError& e) {
        return invalid(e);
    } catch (const OffsetError& e) {
        return invalid(e);
    } catch (const MeanViolationError& e) {
        return invalid(e);
    } catch (const CrossCheckError& e) {
        std::cerr << "accuracy check failed: " << e.what() << " (raise --grid)\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

} // namespace vdw::cli
