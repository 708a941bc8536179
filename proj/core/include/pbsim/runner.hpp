// Batch front-end behind the CLI: steady-state reports, parameter sweeps,
// delayed correlations, device derivation, and the numeric-vs-analytic
// validation suite. All commands produce a Table.
#pragma once

#include "pbsim/config.hpp"
#include "pbsim/dynamics.hpp"
#include "pbsim/report.hpp"
#include "pbsim/stats.hpp"

namespace pbsim {

// Squeezed-frame master-equation collapse set {(a_s, gamma_m_eff), (s+s-, gamma_z)}.
std::vector<CollapseOp> collapse_set(const ModelParams& p);
std::vector<CollapseOp> collapse_set(const SinglePhononParams& p);

struct SteadyPoint {
    DensityMatrix rho;
    SteadyStateInfo info;
    BlockadeReport report;
};

// Effective-model steady state plus its blockade report.
SteadyPoint solve_steady_point(const ModelParams& p);
SteadyPoint solve_steady_point(const SinglePhononParams& p);

Table cmd_device(const RunConfig& config);
Table cmd_steady(const RunConfig& config);
Table cmd_sweep(const RunConfig& config);
Table cmd_g2tau(const RunConfig& config);
Table cmd_validate(const RunConfig& config);

// Dispatch by subcommand name; throws on unknown command.
Table run_command(const std::string& command, const RunConfig& config);

// Serialize to config.out_path (or the stream when the path is empty).
void write_table(const Table& table, const RunConfig& config, std::ostream& fallback);

}  // namespace pbsim
