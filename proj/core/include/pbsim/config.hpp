// Run configuration: ingestion of JSON configs with explicit unit tags,
// named experiment presets, and resolution into solver parameter structs.
// Frequencies are tagged "2pi_hz" (value * 2 pi rad/s) or "rad_per_s";
// untagged frequency fields are rejected (no unit inference).
#pragma once

#include "pbsim/device.hpp"
#include "pbsim/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pbsim {

// Two-phonon model as ingested; gamma_m_eff may be given directly or derived
// from (Q, n_th, omega_m) per point.
struct ModelSpec {
    double g = 0.0;       // rad/s
    double r_p = 0.0;
    double eps_L = 0.0;   // rad/s, bare drive
    std::optional<double> eps_L_eff;  // rad/s; overrides eps_L when set
    double delta = 0.0;   // rad/s
    std::optional<double> delta_s;
    std::optional<double> delta_ed;
    double gamma_z = 0.0;
    std::optional<double> gamma_m_eff;
    std::optional<double> Q;
    double omega_m = 2.0 * M_PI * 3.8e6;
    double n_th = 54.0;
    int fock_dim = 15;
};

ModelParams resolve_model(const ModelSpec& spec);

// Single-phonon coupling variant; drive detuning defaults to the dressed
// resonance delta_s - delta_L = +g_eff'.
struct SinglePhononSpec {
    double g0 = 0.0;
    double r_p = 0.0;
    double eps_L = 0.0;
    double gamma_z = 0.0;
    std::optional<double> gamma_m_eff;
    std::optional<double> Q;
    double omega_m = 2.0 * M_PI * 3.8e6;
    double n_th = 54.0;
    std::optional<double> delta;  // delta_s - delta_L
    int fock_dim = 15;
};

SinglePhononParams resolve_single_phonon(const SinglePhononSpec& spec);

struct SweepAxis {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log = false;
};

std::vector<double> axis_values(const SweepAxis& axis);

// Applies one swept value to the spec; throws on unknown parameter names.
void apply_axis_value(ModelSpec& spec, const std::string& param, double value);
void apply_axis_value(SinglePhononSpec& spec, const std::string& param, double value);

struct TauGridSpec {
    double max_gamma_tau = 20.0;  // grid end in units of gamma_m_eff * tau
    int count = 201;
};

enum class OutputFormat { csv, json };

struct RunConfig {
    std::string preset;  // informational; recorded in output metadata
    std::optional<ModelSpec> model;
    std::optional<SinglePhononSpec> single_phonon;
    std::optional<DeviceGeometry> device;
    std::vector<SweepAxis> axes;  // at most 2
    TauGridSpec tau;
    std::vector<double> rp_list;  // g2tau blocks; empty -> model's r_p

    // Protocol knobs for the full-vs-effective check (documented defaults).
    double b1_evolve_time = 20.0;       // in units of 1/gamma_m_eff
    double b1_delta_ed_over_geff = 1e3;

    std::string out_path;  // empty -> stdout
    OutputFormat format = OutputFormat::csv;
    int fock_dim_override = 0;  // 0 = keep spec value
    int jobs = 1;               // sweep worker threads
};

RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace pbsim
