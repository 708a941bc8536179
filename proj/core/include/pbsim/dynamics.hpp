// Lindblad superoperator construction, steady states, fixed-step RK4
// propagation, and two-time correlation via the quantum regression theorem.
//
// Vectorization convention: column stacking, vec(A X B) = (B^T kron A) vec(X),
// with the Liouvillian acting from the left on vec(rho). Eigen's column-major
// storage makes Map<VectorXcd>(rho.data()) exactly this vec.
#pragma once

#include "pbsim/model.hpp"
#include "pbsim/qcore.hpp"

#include <vector>

namespace pbsim {

struct CollapseOp {
    Matrix op;
    double rate = 0.0;
};

struct Liouvillian {
    HilbertSpace space;
    Matrix matrix;  // dim^2 x dim^2

    // Induced infinity norm (max absolute row sum).
    double norm_inf() const { return matrix.cwiseAbs().rowwise().sum().maxCoeff(); }
};

// L = -i(I kron H - H^T kron I)
//     + sum_k rate_k [ conj(o_k) kron o_k - (I kron o_k^dag o_k + (o_k^dag o_k)^T kron I)/2 ].
// Rejects non-Hermitian H and negative rates.
Liouvillian build_liouvillian(const Operator& H, const std::vector<CollapseOp>& collapse);

struct SteadyStateInfo {
    double residual = 0.0;          // ||L vec(rho_ss)||_inf
    double liouvillian_norm = 0.0;  // ||L||_inf
};

// Direct dense solve of L vec(rho) = 0 with one row replaced by tr(rho) = 1.
// Output is Hermitized and trace-normalized; residual must satisfy
// ||L vec(rho_ss)||_inf < 1e-10 ||L||_inf or the solve falls back to an SVD
// kernel analysis (throwing with the kernel dimension if it is not 1).
DensityMatrix steady_state(const Liouvillian& L, SteadyStateInfo* info = nullptr);

// Hamiltonian (possibly time dependent) plus collapse channels.
struct LindbladGenerator {
    TimeDependentHamiltonian H;
    std::vector<CollapseOp> collapse;

    Liouvillian liouvillian(double t = 0.0) const;
};

struct PropagateOptions {
    // Fixed step = (2 pi / omega_fast) / steps_per_drive_period where
    // omega_fast is the largest drive harmonic; additionally capped by
    // stability_margin / lambda with lambda a spectral bound on the generator.
    double steps_per_drive_period = 40.0;
    double stability_margin = 1.2;
    // Allowed trace drift (before renormalization) per unit rate * time.
    double trace_drift_tol = 1e-8;
};

// Fixed-step RK4 integration of drho/dt = L(t) rho. rho0 is the state at
// t_grid.front(); returns one state per grid point. Throws if the
// accumulated trace drift exceeds the bound (advising a finer step).
std::vector<DensityMatrix> propagate(const LindbladGenerator& gen, const DensityMatrix& rho0,
                                     const std::vector<double>& t_grid,
                                     const PropagateOptions& opts = {});

// Steady-state delayed second-order correlation by the regression theorem:
// evolve B = a rho_ss a^dag under the (time-independent) generator and return
// tr(a^dag a B(tau)) / <a^dag a>^2 on the tau grid. Throws if <a^dag a> = 0.
std::vector<double> g2_tau(const LindbladGenerator& gen, const DensityMatrix& rho_ss,
                           const std::vector<double>& tau_grid,
                           const PropagateOptions& opts = {});

}  // namespace pbsim
