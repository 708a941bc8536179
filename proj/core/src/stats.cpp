#include "pbsim/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pbsim {

namespace {

// <a^dag^mu a^mu> = sum_{m} m(m-1)...(m-mu+1) P(m) requires only the
// spin-traced diagonal for diagonal observables, but rho may carry
// off-diagonal parts; use the operator form.
double factorial_moment(const DensityMatrix& rho, int mu) {
    const Matrix a = annihilation(rho.space).mat;
    Matrix am = Matrix::Identity(rho.space.dim(), rho.space.dim());
    for (int k = 0; k < mu; ++k) am = (a * am).eval();
    return (rho.mat * (am.adjoint() * am)).trace().real();
}

}  // namespace

double g_mu(const DensityMatrix& rho, int mu) {
    if (mu < 1) throw std::invalid_argument("g_mu: mu must be >= 1");
    const double n = factorial_moment(rho, 1);
    if (n <= 1e-14) throw std::runtime_error("g_mu: zero mean phonon number");
    return factorial_moment(rho, mu) / std::pow(n, mu);
}

Eigen::VectorXd phonon_distribution(const DensityMatrix& rho) {
    const HilbertSpace& sp = rho.space;
    Eigen::VectorXd P(sp.fock_dim);
    for (int m = 0; m < sp.fock_dim; ++m) {
        double p = 0.0;
        for (int s = 0; s < sp.spin_dim; ++s) p += rho.mat(sp.index(m, s), sp.index(m, s)).real();
        P(m) = p;
    }
    return P;
}

Eigen::VectorXd poisson_reference(double n_mean, int N) {
    if (n_mean < 0.0) throw std::invalid_argument("poisson_reference: n_mean must be >= 0");
    Eigen::VectorXd P(N);
    double w = std::exp(-n_mean);
    for (int m = 0; m < N; ++m) {
        P(m) = w;
        w *= n_mean / double(m + 1);
    }
    return P;
}

BlockadeCriteria blockade_criteria(double g1, double g2, double n_mean) {
    BlockadeCriteria c;
    c.f = std::exp(-n_mean);
    c.f1 = c.f + n_mean * g2;
    // Strict inequalities, no epsilon margin; boundary cases come out false.
    c.criterion_i = std::isfinite(g2) && g2 < c.f;
    c.criterion_ii = std::isfinite(g1) && std::isfinite(c.f1) && g1 >= c.f1;
    return c;
}

NPhononCriteria n_phonon_criteria(const DensityMatrix& rho, int n) {
    if (n < 1) throw std::invalid_argument("n_phonon_criteria: n must be >= 1");
    const double n_mean = factorial_moment(rho, 1);
    if (n_mean <= 1e-14) return {};
    const double gn = g_mu(rho, n);
    const double gn1 = g_mu(rho, n + 1);
    const double f = std::exp(-n_mean);
    return {gn1 < f, gn >= f + n_mean * gn1};
}

double truncation_fidelity(const DensityMatrix& rho) {
    const HilbertSpace& sp = rho.space;
    auto pop = [&](int n, int s) { return rho.mat(sp.index(n, s), sp.index(n, s)).real(); };
    return pop(0, kSpinD) + pop(1, kSpinD) + pop(2, kSpinD) + pop(0, kSpinE);
}

DetectionProbabilities detection_observables(const DensityMatrix& rho) {
    const HilbertSpace& sp = rho.space;
    DetectionProbabilities d;
    for (int s = 0; s < sp.spin_dim; ++s) d.P2 += rho.mat(sp.index(2, s), sp.index(2, s)).real();
    for (int n = 0; n < sp.fock_dim; ++n) d.Pe += rho.mat(sp.index(n, kSpinE), sp.index(n, kSpinE)).real();
    d.sensitivity = d.P2 > 0.0 ? d.Pe / d.P2 : 0.0;
    return d;
}

BlockadeReport make_report(const DensityMatrix& rho) {
    BlockadeReport r;
    r.n_mean = factorial_moment(rho, 1);
    r.P = phonon_distribution(rho);
    r.poisson = poisson_reference(std::max(r.n_mean, 0.0), rho.space.fock_dim);
    r.fidelity = truncation_fidelity(rho);
    const auto det = detection_observables(rho);
    r.P2 = det.P2;
    r.Pe = det.Pe;
    if (r.n_mean > 1e-14) {
        r.g1 = g_mu(rho, 1);
        r.g2 = g_mu(rho, 2);
        r.g3 = g_mu(rho, 3);
        const auto c = blockade_criteria(r.g1, r.g2, r.n_mean);
        r.f = c.f;
        r.f1 = c.f1;
        r.criterion_i = c.criterion_i;
        r.criterion_ii = c.criterion_ii;
    } else {
        // Undefined correlations at zero occupation: explicit NaN sentinels.
        const double nan = std::numeric_limits<double>::quiet_NaN();
        r.g1 = r.g2 = r.g3 = nan;
        r.f = std::exp(-std::max(r.n_mean, 0.0));
        r.f1 = nan;
        r.criterion_i = r.criterion_ii = false;
    }
    return r;
}

}  // namespace pbsim
