// Phonon statistics and blockade diagnostics computed on squeezed-frame
// steady states: correlation functions, number distributions, the Poisson
// reference, blockade criteria, truncation fidelity, and the qubit-based
// detection observables.
#pragma once

#include "pbsim/qcore.hpp"

#include <Eigen/Dense>

namespace pbsim {

// Normalized equal-time mu-th order correlation <a^dag^mu a^mu> / <a^dag a>^mu.
// Throws if the mean phonon number vanishes.
double g_mu(const DensityMatrix& rho, int mu);

// P(m) = sum_s <m,s| rho |m,s> for m = 0..N-1 (spin traced out).
Eigen::VectorXd phonon_distribution(const DensityMatrix& rho);

// Poisson weights n_mean^m exp(-n_mean)/m! for m = 0..N-1.
Eigen::VectorXd poisson_reference(double n_mean, int N);

struct BlockadeCriteria {
    double f = 1.0;   // exp(-n_mean)
    double f1 = 1.0;  // f + n_mean * g2
    bool criterion_i = false;   // g2 < f
    bool criterion_ii = false;  // g1 >= f1
};

BlockadeCriteria blockade_criteria(double g1, double g2, double n_mean);

// General n-phonon-blockade test: g^{n+1} < exp(-n_mean) and
// g^{n} >= exp(-n_mean) + n_mean * g^{n+1}.
struct NPhononCriteria {
    bool criterion_i = false;
    bool criterion_ii = false;
};
NPhononCriteria n_phonon_criteria(const DensityMatrix& rho, int n);

// Summed population of {|0,D>, |1,D>, |2,D>, |0,E>}.
double truncation_fidelity(const DensityMatrix& rho);

struct DetectionProbabilities {
    double P2 = 0.0;          // two-phonon population, spin traced
    double Pe = 0.0;          // qubit excited-state population, phonon traced
    double sensitivity = 0.0; // Pe / P2 when P2 > 0, else 0
};
DetectionProbabilities detection_observables(const DensityMatrix& rho);

// Everything the report rows need for one parameter point. Correlations are
// NaN sentinels when the mean phonon number vanishes (undefined).
struct BlockadeReport {
    double n_mean = 0.0;
    double g1 = 0.0, g2 = 0.0, g3 = 0.0;
    Eigen::VectorXd P;        // phonon distribution
    Eigen::VectorXd poisson;  // matched Poisson reference
    double f = 1.0, f1 = 1.0;
    bool criterion_i = false, criterion_ii = false;
    double fidelity = 0.0;
    double P2 = 0.0, Pe = 0.0;
};

BlockadeReport make_report(const DensityMatrix& rho);

}  // namespace pbsim
