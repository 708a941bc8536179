#include "pbsim/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace pbsim {

namespace {
constexpr Complex kI{0.0, 1.0};
}

AmplitudeSolution steady_amplitudes(const ModelParams& p) {
    validate_params(p);
    const double geff = p.g_eff();
    const double eps = p.eps_L_eff();
    const double d = p.delta;
    const double gm = p.gamma_m_eff;
    const double gz = p.gamma_z;

    AmplitudeSolution s;
    s.zeta = 0.25 * gz * gz + gm * gm - 4.0 * geff * geff;
    s.Xi = geff * geff + 0.25 * gz * gm;
    s.weak_drive = eps <= geff / 10.0;

    // |C1d|^2 = eps'^2 / (d^2 + eps'^2 + (gm/2)^2) with C0d real positive and
    // |C0d|^2 + |C1d|^2 = 1.
    const double denom0 = d * d + 0.25 * gm * gm;
    const double c1sq = eps * eps / (denom0 + eps * eps);
    s.C0d = std::sqrt(1.0 - c1sq);
    s.C1d = -eps * s.C0d / (d - kI * (0.5 * gm));

    const Complex den2 = 2.0 * geff * geff
                       - (2.0 * d - kI * gm) * (2.0 * d - kI * (0.5 * gz));
    if (std::abs(den2) < 1e-300)
        throw std::runtime_error("steady_amplitudes: two-phonon denominator degenerates");
    s.C2d = std::sqrt(2.0) * eps * (2.0 * d - kI * (0.5 * gz)) / den2 * s.C1d;

    const Complex den3 = 2.0 * d - kI * (0.5 * gz);
    if (std::abs(den3) < 1e-300)
        throw std::runtime_error("steady_amplitudes: excited-amplitude denominator degenerates");
    s.C0e = -std::sqrt(2.0) * geff * s.C2d / den3;
    return s;
}

double analytic_g2(const ModelParams& p) {
    const double geff = p.g_eff();
    const double eps = p.eps_L_eff();
    const double d = p.delta;
    const double gm = p.gamma_m_eff;
    const double gz = p.gamma_z;
    const double zeta = 0.25 * gz * gz + gm * gm - 4.0 * geff * geff;
    const double Xi = geff * geff + 0.25 * gz * gm;
    const double num = (4.0 * d * d + 0.25 * gz * gz) * (d * d + eps * eps + 0.25 * gm * gm);
    const double den = 4.0 * std::pow(d, 4) + d * d * zeta + Xi * Xi;
    return num / den;
}

double analytic_g2_min(const ModelParams& p) {
    const double geff = p.g_eff();
    const double eps = p.eps_L_eff();
    const double gm = p.gamma_m_eff;
    const double gz = p.gamma_z;
    const double den = gm * gz + 4.0 * geff * geff;
    return gz * gz * (gm * gm + 4.0 * eps * eps) / (den * den);
}

std::pair<double, double> enhancement_factors(double r_p) {
    if (r_p < 0.0) throw std::invalid_argument("enhancement_factors: r_p must be >= 0");
    const double c2 = std::cosh(r_p) * std::cosh(r_p);
    return {c2, c2 * c2};
}

double anharmonic_splitting(const ModelParams& p) {
    return 2.0 * std::sqrt(2.0) * p.g_eff();
}

double anharmonic_splitting(const SinglePhononParams& p) {
    return 2.0 * p.g_eff();
}

}  // namespace pbsim
