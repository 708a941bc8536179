// Closed-form companions to the Lindblad numerics: the four-state amplitude
// equations, the analytic second-order correlation, enhancement factors, and
// eigen-splitting predictions.
//
// These formulas follow from the non-Hermitian (no-jump) evolution truncated
// to {|0,D>, |1,D>, |2,D>, |0,E>}; the validate command measures how far the
// full master-equation steady state departs from them.
#pragma once

#include "pbsim/model.hpp"

#include <complex>
#include <utility>

namespace pbsim {

struct AmplitudeSolution {
    Complex C0d, C1d, C2d, C0e;
    double zeta = 0.0;  // (gamma_z/2)^2 + gamma_m^2 - 4 g_eff^2
    double Xi = 0.0;    // g_eff^2 + gamma_z gamma_m / 4
    bool weak_drive = true;  // eps_L' <= g_eff / 10
};

// Steady amplitudes with the phase convention C0d real positive. Throws when
// the two-phonon denominator degenerates.
AmplitudeSolution steady_amplitudes(const ModelParams& p);

// Equal-time second-order correlation of the amplitude model:
// [4 d^2 + (gz/2)^2][d^2 + eps'^2 + (gm/2)^2] / (4 d^4 + d^2 zeta + Xi^2).
double analytic_g2(const ModelParams& p);

// The delta = 0 minimum: gz^2 (gm^2 + 4 eps'^2) / (gm gz + 4 g_eff^2)^2.
double analytic_g2_min(const ModelParams& p);

// (g_eff/g, C'/C) = (cosh^2 r_p, cosh^4 r_p).
std::pair<double, double> enhancement_factors(double r_p);

// Dressed-manifold gap of the undriven model: 2 sqrt(2) g_eff for the
// two-phonon pair {|2,D>, |0,E>}, 2 g_eff' for the single-phonon pair.
double anharmonic_splitting(const ModelParams& p);
double anharmonic_splitting(const SinglePhononParams& p);

}  // namespace pbsim
