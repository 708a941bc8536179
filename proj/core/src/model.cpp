#include "pbsim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace pbsim {

namespace {
constexpr Complex kI{0.0, 1.0};
}

SpinDressing dress_spin(double Delta, double Omega) {
    if (Delta <= 0.0) throw std::invalid_argument("dress_spin: Delta must be > 0");
    if (Omega < 0.0) throw std::invalid_argument("dress_spin: Omega must be >= 0");
    SpinDressing d;
    d.Delta = Delta;
    d.Omega = Omega;
    d.theta = 0.5 * std::atan2(std::sqrt(2.0) * Omega, Delta);
    d.omega_ed = 0.5 * (std::sqrt(Delta * Delta + 2.0 * Omega * Omega) - Delta);
    return d;
}

SqueezeTransform SqueezeTransform::from_r(double r_p) {
    if (r_p < 0.0) throw std::invalid_argument("SqueezeTransform: r_p must be >= 0");
    return {r_p, std::cosh(r_p), std::sinh(r_p)};
}

SqueezeTransform SqueezeTransform::from_pump(double Omega_p, double delta_m) {
    if (std::abs(Omega_p) >= std::abs(delta_m))
        throw std::invalid_argument("SqueezeTransform: requires |Omega_p| < |delta_m|");
    return from_r(0.5 * std::atanh(Omega_p / delta_m));
}

void validate_params(const ModelParams& p) {
    if (p.fock_dim < 2) throw std::invalid_argument("ModelParams: fock_dim must be >= 2");
    if (p.g < 0.0) throw std::invalid_argument("ModelParams: g must be >= 0");
    if (p.eps_L < 0.0) throw std::invalid_argument("ModelParams: eps_L must be >= 0");
    if (p.gamma_m_eff < 0.0) throw std::invalid_argument("ModelParams: gamma_m_eff must be >= 0");
    if (p.gamma_z < 0.0) throw std::invalid_argument("ModelParams: gamma_z must be >= 0");
    if (p.n_th < 0.0) throw std::invalid_argument("ModelParams: n_th must be >= 0");
}

Matrix TimeDependentHamiltonian::at(double t) const {
    Matrix h = static_part;
    for (const auto& d : drives) {
        Complex phase = std::exp(-kI * d.omega * t);
        h += phase * d.op + std::conj(phase) * d.op.adjoint();
    }
    return h;
}

double TimeDependentHamiltonian::max_drive_frequency() const {
    double w = 0.0;
    for (const auto& d : drives) w = std::max(w, std::abs(d.omega));
    return w;
}

TimeDependentHamiltonian lab_decomposition(const ModelParams& p) {
    validate_params(p);
    const HilbertSpace sp = p.space();
    const Matrix a = annihilation(sp).mat;
    const Matrix ad = a.adjoint();
    const Matrix sm = spin_lower(sp).mat;
    const Matrix smp = sm.adjoint();

    TimeDependentHamiltonian h{sp, {}, {}};
    h.static_part = p.delta_m() * (ad * a) + p.delta_ed * (smp * sm)
                  + p.g * (ad * ad * sm + a * a * smp)
                  + 0.5 * p.pump_amplitude() * (ad * ad + a * a);
    h.drives.push_back({p.delta_L(), p.eps_L * ad});
    return h;
}

Operator build_lab_hamiltonian(const ModelParams& p, double t) {
    return {p.space(), lab_decomposition(p).at(t)};
}

TimeDependentHamiltonian squeezed_full_decomposition(const ModelParams& p) {
    validate_params(p);
    const HilbertSpace sp = p.space();
    const Matrix a = annihilation(sp).mat;
    const Matrix ad = a.adjoint();
    const Matrix sm = spin_lower(sp).mat;
    const Matrix smp = sm.adjoint();
    const double U = p.squeeze.U, V = p.squeeze.V;

    TimeDependentHamiltonian h{sp, {}, {}};
    h.static_part = p.delta_s * (ad * a) + p.delta_ed * (smp * sm)
                  + p.g * U * U * (ad * ad * sm + a * a * smp)
                  + p.g * V * V * (ad * ad * smp + a * a * sm)
                  - p.g * U * V * ((ad * a + a * ad) * (smp + sm));
    h.drives.push_back({p.delta_L(), p.eps_L * U * ad});
    // counter-rotating drive: -eps_L V (a^dag e^{+i dL t} + a e^{-i dL t})
    h.drives.push_back({-p.delta_L(), -p.eps_L * V * ad});
    return h;
}

Operator build_squeezed_full_hamiltonian(const ModelParams& p, double t) {
    return {p.space(), squeezed_full_decomposition(p).at(t)};
}

TimeDependentHamiltonian squeezed_rwa_decomposition(const ModelParams& p) {
    validate_params(p);
    const HilbertSpace sp = p.space();
    const Matrix a = annihilation(sp).mat;
    const Matrix ad = a.adjoint();
    const Matrix sm = spin_lower(sp).mat;
    const Matrix smp = sm.adjoint();

    TimeDependentHamiltonian h{sp, {}, {}};
    h.static_part = p.delta_s * (ad * a) + p.delta_ed * (smp * sm)
                  + p.g_eff() * (ad * ad * sm + a * a * smp);
    h.drives.push_back({p.delta_L(), p.eps_L_eff() * ad});
    return h;
}

Operator build_squeezed_rwa_hamiltonian(const ModelParams& p, double t) {
    return {p.space(), squeezed_rwa_decomposition(p).at(t)};
}

Operator build_effective_hamiltonian(const ModelParams& p) {
    validate_params(p);
    const HilbertSpace sp = p.space();
    const Matrix a = annihilation(sp).mat;
    const Matrix ad = a.adjoint();
    const Matrix sm = spin_lower(sp).mat;
    const Matrix smp = sm.adjoint();
    Matrix h = p.delta * (ad * a + 2.0 * (smp * sm))
             + p.g_eff() * (ad * ad * sm + a * a * smp)
             + p.eps_L_eff() * (ad + a);
    return {sp, std::move(h)};
}

Operator build_nonhermitian_hamiltonian(const ModelParams& p) {
    Operator h = build_effective_hamiltonian(p);
    const HilbertSpace sp = p.space();
    h.mat -= kI * (0.5 * p.gamma_m_eff) * number_operator(sp).mat;
    h.mat -= kI * (0.5 * p.gamma_z) * spin_excited_projector(sp).mat;
    return h;
}

namespace {

void validate_single_phonon(const SinglePhononParams& p) {
    if (p.fock_dim < 2) throw std::invalid_argument("SinglePhononParams: fock_dim must be >= 2");
    if (p.g0 < 0.0 || p.eps_L < 0.0 || p.gamma_m_eff < 0.0 || p.gamma_z < 0.0)
        throw std::invalid_argument("SinglePhononParams: rates must be >= 0");
}

}  // namespace

TimeDependentHamiltonian single_phonon_decomposition(const SinglePhononParams& p, bool rwa) {
    validate_single_phonon(p);
    const HilbertSpace sp = p.space();
    const Matrix a = annihilation(sp).mat;
    const Matrix ad = a.adjoint();
    const Matrix sm = spin_lower(sp).mat;
    const Matrix smp = sm.adjoint();
    const double U = p.squeeze.U, V = p.squeeze.V;

    TimeDependentHamiltonian h{sp, {}, {}};
    h.static_part = p.delta_s * (ad * a) + p.delta_ed * (smp * sm);
    if (rwa) {
        h.static_part += p.g_eff() * (ad * sm + a * smp);
        h.drives.push_back({p.delta_L(), p.eps_L_eff() * ad});
    } else {
        h.static_part += p.g0 * U * (ad * sm + a * smp) - p.g0 * V * (a * sm + ad * smp);
        h.drives.push_back({p.delta_L(), p.eps_L * U * ad});
        h.drives.push_back({-p.delta_L(), -p.eps_L * V * ad});
    }
    return h;
}

Operator build_single_phonon_hamiltonian(const SinglePhononParams& p, double t, bool rwa) {
    return {p.space(), single_phonon_decomposition(p, rwa).at(t)};
}

Operator build_single_phonon_rotated(const SinglePhononParams& p) {
    validate_single_phonon(p);
    const HilbertSpace sp = p.space();
    const Matrix a = annihilation(sp).mat;
    const Matrix ad = a.adjoint();
    const Matrix sm = spin_lower(sp).mat;
    const Matrix smp = sm.adjoint();
    Matrix h = p.delta * (ad * a + smp * sm)
             + p.g_eff() * (ad * sm + a * smp)
             + p.eps_L_eff() * (ad + a);
    return {sp, std::move(h)};
}

}  // namespace pbsim
