#pragma once

#include "vdw/eos.hpp"

#include <optional>
#include <string>

namespace vdw::cli {

enum ExitCode { kOk = 0, kInvalidInput = 2, kNoSolution = 3, kInternal = 4 };

struct RunConfig {
    EosParams eos;
    std::optional<double> vbar;   // midpoint of the Maxwell interval when absent
    double epsilon = 0.02;
    double eps_start = 0.02;
    double eps_end = 0.002;
    double eps_ratio = 0.8;
    std::string kind = "valley";
    int cells = 1;
    int grid_size = 16384;
    std::string output_dir = "out";
    unsigned seed = 0;
    int n_max = 200;
    std::optional<double> rho0;   // 1/vbar when absent
    double eps_rho = 0.01;
    int max_cells = 3;
};

// Flat JSON config; unknown keys are rejected. Throws DomainError.
void apply_config_file(RunConfig& cfg, const std::string& path);

// Checks field ranges before any computation. Throws DomainError or
// SupercriticalError.
void validate(const RunConfig& cfg);

int cmd_landscape(const RunConfig& cfg);
int cmd_sharp(const RunConfig& cfg);
int cmd_solve(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_stability(const RunConfig& cfg);
int cmd_energy_ordering(const RunConfig& cfg);

// Full command line entry; maps library errors onto exit codes.
int run(int argc, char** argv);

} // namespace vdw::cli
