#include "pbsim/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pbsim;

namespace {

// Truncated coherent state built independently by its series.
DensityMatrix coherent_state(const HilbertSpace& sp, double alpha) {
    Vector ket = Vector::Zero(sp.dim());
    double amp = std::exp(-0.5 * alpha * alpha);
    double fact = 1.0;
    for (int n = 0; n < sp.fock_dim; ++n) {
        if (n > 0) fact *= n;
        ket(sp.index(n, kSpinD)) = amp * std::pow(alpha, n) / std::sqrt(fact);
    }
    Matrix m = ket * ket.adjoint();
    m /= m.trace().real();
    return {sp, m};
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("correlations of Fock states") {
    HilbertSpace sp{6, 2};
    CHECK(g_mu(basis_density(sp, 1, kSpinD), 2) == doctest::Approx(0.0));
    // |2>: <a+2 a2> = 2, <n> = 2 -> g2 = 0.5
    CHECK(g_mu(basis_density(sp, 2, kSpinD), 2) == doctest::Approx(0.5));
    CHECK_THROWS_AS(g_mu(vacuum_state(sp), 2), std::runtime_error);
    CHECK_THROWS_AS(g_mu(basis_density(sp, 1, kSpinD), 0), std::invalid_argument);
}

TEST_CASE("coherent state is Poissonian") {
    HilbertSpace sp{15, 2};
    DensityMatrix rho = coherent_state(sp, std::sqrt(0.1));
    CHECK(g_mu(rho, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g_mu(rho, 2) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(g_mu(rho, 3) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("phonon distribution traces out the spin") {
    HilbertSpace sp{5, 2};
    CHECK(phonon_distribution(vacuum_state(sp))(0) == doctest::Approx(1.0));

    Matrix m = Matrix::Zero(sp.dim(), sp.dim());
    m(sp.index(1, kSpinD), sp.index(1, kSpinD)) = 0.25;
    m(sp.index(1, kSpinE), sp.index(1, kSpinE)) = 0.35;
    m(sp.index(0, kSpinD), sp.index(0, kSpinD)) = 0.4;
    DensityMatrix rho{sp, m};
    Eigen::VectorXd P = phonon_distribution(rho);
    CHECK(P(1) == doctest::Approx(0.6));
    CHECK(P.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("poisson reference") {
    Eigen::VectorXd p0 = poisson_reference(0.0, 6);
    CHECK(p0(0) == doctest::Approx(1.0));
    CHECK(p0.tail(5).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

    // first moment recovers n_mean up to the truncation tail
    const double n = 0.5;
    Eigen::VectorXd p = poisson_reference(n, 15);
    double first = 0.0;
    for (int m = 0; m < 15; ++m) first += m * p(m);
    CHECK(std::abs(first - n) < 1e-10);
    // relative deviation vector is well defined wherever the reference is positive
    for (int m = 0; m < 15; ++m) CHECK(p(m) > 0.0);
}

TEST_CASE("blockade criteria") {
    // coherent-state inputs: criterion_i must fail (1 < e^{-0.1} is false)
    BlockadeCriteria c = blockade_criteria(1.0, 1.0, 0.1);
    CHECK_FALSE(c.criterion_i);
    CHECK(c.f == doctest::Approx(std::exp(-0.1)));
    CHECK(c.f1 == doctest::Approx(std::exp(-0.1) + 0.1));

    // n_mean -> 0: thresholds approach 1, recovering the g2 < 1 criterion
    BlockadeCriteria c0 = blockade_criteria(1.0, 0.5, 1e-9);
    CHECK(c0.f == doctest::Approx(1.0));
    CHECK(c0.f1 == doctest::Approx(1.0));
    CHECK(c0.criterion_i);
    CHECK(c0.criterion_ii);

    // general n test on a single-phonon-heavy diagonal state
    HilbertSpace sp{8, 2};
    Matrix m = Matrix::Zero(sp.dim(), sp.dim());
    m(sp.index(0, kSpinD), sp.index(0, kSpinD)) = 0.7;
    m(sp.index(1, kSpinD), sp.index(1, kSpinD)) = 0.29;
    m(sp.index(2, kSpinD), sp.index(2, kSpinD)) = 0.01;
    NPhononCriteria nc = n_phonon_criteria({sp, m}, 1);
    CHECK(nc.criterion_i);
    CHECK(nc.criterion_ii);
}

TEST_CASE("truncation fidelity") {
    HilbertSpace sp{6, 2};
    CHECK(truncation_fidelity(vacuum_state(sp)) == doctest::Approx(1.0));
    Matrix m = Matrix::Zero(sp.dim(), sp.dim());
    m(sp.index(3, kSpinD), sp.index(3, kSpinD)) = 0.5;  // outside the subspace
    m(sp.index(2, kSpinD), sp.index(2, kSpinD)) = 0.5;
    CHECK(truncation_fidelity({sp, m}) == doctest::Approx(0.5));
}

TEST_CASE("detection observables") {
    HilbertSpace sp{6, 2};
    auto d0 = detection_observables(vacuum_state(sp));
    CHECK(d0.P2 == doctest::Approx(0.0));
    CHECK(d0.Pe == doctest::Approx(0.0));

    Matrix m = Matrix::Zero(sp.dim(), sp.dim());
    m(sp.index(2, kSpinD), sp.index(2, kSpinD)) = 0.2;
    m(sp.index(2, kSpinE), sp.index(2, kSpinE)) = 0.1;
    m(sp.index(0, kSpinE), sp.index(0, kSpinE)) = 0.3;
    m(sp.index(0, kSpinD), sp.index(0, kSpinD)) = 0.4;
    auto d = detection_observables({sp, m});
    CHECK(d.P2 == doctest::Approx(0.3));
    CHECK(d.Pe == doctest::Approx(0.4));
    CHECK(d.sensitivity == doctest::Approx(0.4 / 0.3));
}

TEST_CASE("factorial-moment identity for Fock-diagonal states") {
    // For rho diagonal in the Fock basis, g2 from operator moments equals the
    // P(m)-weighted factorial moment ratio.
    HilbertSpace sp{10, 2};
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix m = Matrix::Zero(sp.dim(), sp.dim());
    double norm = 0.0;
    for (int n = 0; n < sp.fock_dim; ++n)
        for (int s = 0; s < 2; ++s) {
            const double w = u(rng) * std::exp(-0.8 * n);
            m(sp.index(n, s), sp.index(n, s)) = w;
            norm += w;
        }
    m /= norm;
    DensityMatrix rho{sp, m};
    Eigen::VectorXd P = phonon_distribution(rho);
    double n1 = 0.0, n2 = 0.0;
    for (int k = 0; k < sp.fock_dim; ++k) {
        n1 += k * P(k);
        n2 += k * (k - 1.0) * P(k);
    }
    CHECK(g_mu(rho, 2) == doctest::Approx(n2 / (n1 * n1)).epsilon(1e-8));
    CHECK(g_mu(rho, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("report assembly and the zero-drive sentinel") {
    HilbertSpace sp{8, 2};
    BlockadeReport r = make_report(vacuum_state(sp));
    CHECK(std::isnan(r.g2));
    CHECK(std::isnan(r.g1));
    CHECK_FALSE(r.criterion_i);
    CHECK_FALSE(r.criterion_ii);
    CHECK(r.f == doctest::Approx(1.0));
    CHECK(r.fidelity == doctest::Approx(1.0));

    BlockadeReport r2 = make_report(basis_density(sp, 2, kSpinD));
    CHECK(r2.n_mean == doctest::Approx(2.0));
    CHECK(r2.g2 == doctest::Approx(0.5));
    CHECK(r2.P(2) == doctest::Approx(1.0));
    // reference sums to 1 minus the documented truncation tail
    double tail = 0.0;
    double w = std::exp(-2.0);
    for (int m = 0; m < sp.fock_dim; ++m) w *= 2.0 / (m + 1.0);
    for (int m = sp.fock_dim; m < 60; ++m) {
        tail += w;
        w *= 2.0 / (m + 1.0);
    }
    CHECK(std::abs(r2.poisson.sum() - (1.0 - tail)) < 1e-10);
}

}  // TEST_SUITE
