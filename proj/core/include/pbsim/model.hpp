// Parameter containers, the dressed-spin reduction, the squeezing transform,
// and builders for every Hamiltonian form of the driven two-phonon
// spin-mechanical model. All frequencies are angular (rad/s).
#pragma once

#include "pbsim/qcore.hpp"

#include <cmath>
#include <vector>

namespace pbsim {

// Microwave dressing of the spin triplet down to the effective TLS {|D>,|E>}.
// tan(2 theta) = sqrt(2) Omega / Delta; omega_ed = (sqrt(Delta^2+2 Omega^2) - Delta)/2.
// Valid as a two-level reduction for Delta >> Omega (cos theta ~ 1).
struct SpinDressing {
    double Delta = 0.0;     // MW detuning
    double Omega = 0.0;     // MW Rabi frequency
    double theta = 0.0;     // mixing angle
    double omega_ed = 0.0;  // effective TLS splitting
};

SpinDressing dress_spin(double Delta, double Omega);

// Bogoliubov squeeze transform a -> U a_s + V a_s^dag with U = cosh(r_p),
// V = sinh(r_p).
struct SqueezeTransform {
    double r_p = 0.0;
    double U = 1.0;
    double V = 0.0;

    static SqueezeTransform from_r(double r_p);
    // r_p = arctanh(Omega_p / delta_m) / 2; requires |Omega_p| < |delta_m|.
    static SqueezeTransform from_pump(double Omega_p, double delta_m);
};

// Squeezed-frame model parameters. delta = delta_s - delta_L is the drive
// detuning of the effective (rotated) model.
struct ModelParams {
    double g = 0.0;        // bare two-phonon coupling
    SqueezeTransform squeeze;
    double eps_L = 0.0;    // bare linear drive strength
    double delta = 0.0;    // drive detuning delta_s - delta_L
    double delta_s = 0.0;  // squeezed-oscillator frequency
    double delta_ed = 0.0; // effective TLS splitting in the pump-rotating frame
    double gamma_m_eff = 0.0;  // engineered mechanical decay
    double gamma_z = 0.0;      // spin dephasing
    double n_th = 0.0;         // thermal occupation (enters only via Q conversion)
    int fock_dim = 15;

    double g_eff() const { return g * squeeze.U * squeeze.U; }
    double eps_L_eff() const { return eps_L * squeeze.U; }
    double delta_L() const { return delta_s - delta; }
    // Lab-frame (pump-rotating) oscillator detuning and pump amplitude that
    // reproduce this squeezed-frame model.
    double delta_m() const { return delta_s * std::cosh(2.0 * squeeze.r_p); }
    double pump_amplitude() const { return delta_m() * std::tanh(2.0 * squeeze.r_p); }
    HilbertSpace space() const { return HilbertSpace{fock_dim, 2}; }
};

// Throws std::invalid_argument on negative rates or invalid truncation.
void validate_params(const ModelParams& p);

// One drive harmonic: contributes op * exp(-i omega t) + h.c.
struct DriveTerm {
    double omega = 0.0;
    Matrix op;
};

// H(t) = static_part + sum_k [ drives[k].op * exp(-i omega_k t) + h.c. ].
struct TimeDependentHamiltonian {
    HilbertSpace space;
    Matrix static_part;
    std::vector<DriveTerm> drives;

    Matrix at(double t) const;
    bool time_independent() const { return drives.empty(); }
    double max_drive_frequency() const;
};

// Pump-rotating-frame Hamiltonian with the bare mode a:
//   delta_m a^dag a + delta_ed s+s- + g(a^dag2 s- + a^2 s+)
//   + (Omega_p/2)(a^dag2 + a^2) + eps_L (a^dag e^{-i delta_L t} + h.c.)
TimeDependentHamiltonian lab_decomposition(const ModelParams& p);
Operator build_lab_hamiltonian(const ModelParams& p, double t);

// Full squeezed-frame Hamiltonian (all counter-rotating pieces kept):
//   delta_s n + delta_ed s+s- + g U^2 (a^dag2 s- + a^2 s+)
//   + g V^2 (a^dag2 s+ + a^2 s-) - g U V (a^dag a + a a^dag)(s+ + s-)
//   + eps_L U (a^dag e^{-i dL t} + a e^{i dL t}) - eps_L V (a^dag e^{i dL t} + a e^{-i dL t})
TimeDependentHamiltonian squeezed_full_decomposition(const ModelParams& p);
Operator build_squeezed_full_hamiltonian(const ModelParams& p, double t);

// RWA squeezed-frame form: delta_s n + delta_ed s+s- + g_eff(a^dag2 s- + a^2 s+)
// + eps_L' (a^dag e^{-i dL t} + h.c.)
TimeDependentHamiltonian squeezed_rwa_decomposition(const ModelParams& p);
Operator build_squeezed_rwa_hamiltonian(const ModelParams& p, double t);

// Time-independent effective model in the drive-rotating frame (assumes
// delta_ed = 2 delta_s): delta (n + 2 s+s-) + g_eff(a^dag2 s- + a^2 s+) + eps_L'(a^dag + a).
Operator build_effective_hamiltonian(const ModelParams& p);

// Effective model minus i(gamma_m_eff/2) a^dag a minus i(gamma_z/2)|E><E|.
Operator build_nonhermitian_hamiltonian(const ModelParams& p);

// Single-phonon coupling variant. delta_ed here follows the single-phonon
// convention omega_ed - omega_p.
struct SinglePhononParams {
    double g0 = 0.0;       // bare single-phonon coupling
    SqueezeTransform squeeze;
    double eps_L = 0.0;
    double delta = 0.0;    // delta_s - delta_L
    double delta_s = 0.0;
    double delta_ed = 0.0;
    double gamma_m_eff = 0.0;
    double gamma_z = 0.0;
    int fock_dim = 15;

    double g_eff() const { return g0 * squeeze.U; }
    double eps_L_eff() const { return eps_L * squeeze.U; }
    double delta_L() const { return delta_s - delta; }
    HilbertSpace space() const { return HilbertSpace{fock_dim, 2}; }
};

// Full form (rwa = false) keeps the -g0 V and -eps_L V counter-rotating
// terms; rwa = true emits the Jaynes-Cummings form with g_eff' = g0 cosh(r_p).
TimeDependentHamiltonian single_phonon_decomposition(const SinglePhononParams& p, bool rwa);
Operator build_single_phonon_hamiltonian(const SinglePhononParams& p, double t, bool rwa);

// RWA form in the drive-rotating frame (time independent, assumes
// delta_ed = delta_s): (delta_s - delta_L)(n + s+s-) + g_eff'(a^dag s- + a s+)
// + eps_L'(a^dag + a).
Operator build_single_phonon_rotated(const SinglePhononParams& p);

}  // namespace pbsim
