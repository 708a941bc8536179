#include "pbsim/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbsim {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix unvec(const Vector& v, int d) {
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

Vector vec(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

}  // namespace

Liouvillian build_liouvillian(const Operator& H, const std::vector<CollapseOp>& collapse) {
    const int d = H.space.dim();
    if (H.mat.rows() != d || H.mat.cols() != d)
        throw std::invalid_argument("build_liouvillian: Hamiltonian shape mismatch");
    const double hscale = std::max(H.mat.cwiseAbs().maxCoeff(), 1.0);
    if ((H.mat - H.mat.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * hscale)
        throw std::invalid_argument("build_liouvillian: non-Hermitian Hamiltonian rejected");

    const Matrix id = Matrix::Identity(d, d);
    Matrix L = -kI * (kron(id, H.mat) - kron(H.mat.transpose(), id));
    for (const auto& c : collapse) {
        if (c.rate < 0.0) throw std::invalid_argument("build_liouvillian: negative rate");
        if (c.op.rows() != d || c.op.cols() != d)
            throw std::invalid_argument("build_liouvillian: collapse operator shape mismatch");
        const Matrix K = c.op.adjoint() * c.op;
        L += c.rate * (kron(c.op.conjugate(), c.op)
                       - 0.5 * kron(id, K) - 0.5 * kron(K.transpose(), id));
    }
    return {H.space, std::move(L)};
}

namespace {

// Solve with one row of the (scaled) Liouvillian replaced by the trace row.
// A vanishing pivot ratio signals that the replaced system is still rank
// deficient (degenerate kernel); such "solutions" are arbitrary kernel
// elements and must not be accepted on their residual alone.
bool solve_with_trace_row(const Matrix& Lscaled, int d, int row, Vector& x) {
    Matrix M = Lscaled;
    M.row(row).setZero();
    for (int i = 0; i < d; ++i) M(row, i * (d + 1)) = 1.0;
    Vector b = Vector::Zero(d * d);
    b(row) = 1.0;
    Eigen::PartialPivLU<Matrix> lu(M);
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    if (pivots.minCoeff() < 1e-10 * pivots.maxCoeff()) return false;
    x = lu.solve(b);
    return x.allFinite();
}

DensityMatrix normalize_state(const HilbertSpace& space, const Vector& x) {
    const int d = space.dim();
    Matrix rho = unvec(x, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (!std::isfinite(tr) || std::abs(tr) < 1e-14)
        throw std::runtime_error("steady_state: singular solve (zero-trace kernel vector)");
    rho /= tr;
    return {space, std::move(rho)};
}

}  // namespace

DensityMatrix steady_state(const Liouvillian& L, SteadyStateInfo* info) {
    const int d = L.space.dim();
    const int d2 = d * d;
    if (L.matrix.rows() != d2 || L.matrix.cols() != d2)
        throw std::invalid_argument("steady_state: Liouvillian shape mismatch");

    const double lnorm = L.norm_inf();
    const double scale = std::max(L.matrix.cwiseAbs().maxCoeff(), 1e-300);
    const Matrix Ls = L.matrix / scale;
    const double tol = 1e-10 * lnorm;

    auto residual_of = [&](const DensityMatrix& rho) {
        return (L.matrix * vec(rho.mat)).cwiseAbs().maxCoeff();
    };

    for (int row : {0, d2 / 2, d2 - 1}) {
        Vector x;
        if (!solve_with_trace_row(Ls, d, row, x)) continue;
        DensityMatrix rho = normalize_state(L.space, x);
        const double res = residual_of(rho);
        if (res < tol) {
            if (info) *info = {res, lnorm};
            return rho;
        }
    }

    // Trace-row replacement failed: analyze the kernel directly.
    Eigen::BDCSVD<Matrix> svd(Ls, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    int kernel_dim = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) < 1e-12 * smax) ++kernel_dim;
    if (kernel_dim != 1)
        throw std::runtime_error("steady_state: degenerate steady states (kernel dimension " +
                                 std::to_string(kernel_dim) + ")");
    DensityMatrix rho = normalize_state(L.space, svd.matrixV().col(d2 - 1));
    const double res = residual_of(rho);
    if (res >= tol)
        throw std::runtime_error("steady_state: residual " + std::to_string(res) +
                                 " exceeds tolerance " + std::to_string(tol));
    if (info) *info = {res, lnorm};
    return rho;
}

Liouvillian LindbladGenerator::liouvillian(double t) const {
    return build_liouvillian({H.space, H.at(t)}, collapse);
}

namespace {

// Right-hand side -i[H(t), rho] + sum_k rate_k D[o_k] rho, written as
//   -i (H_nh rho - rho H_nh^dag) + sum_k rate_k o_k rho o_k^dag
// with H_nh = H(t) - (i/2) sum_k rate_k o_k^dag o_k. Jump terms use the
// sparse triplets of o_k (ladder and projector channels have O(d) entries).
class LindbladRhs {
  public:
    LindbladRhs(const LindbladGenerator& gen)
        : gen_(gen), d_(gen.H.space.dim()) {
        anti_ = Matrix::Zero(d_, d_);
        for (const auto& c : gen.collapse) {
            anti_ -= kI * (0.5 * c.rate) * (c.op.adjoint() * c.op);
            Jump j;
            j.rate = c.rate;
            for (int col = 0; col < d_; ++col)
                for (int row = 0; row < d_; ++row)
                    if (std::abs(c.op(row, col)) > 0.0)
                        j.trips.push_back({row, col, c.op(row, col)});
            j.dense = int(j.trips.size()) > 4 * d_;
            j.op = c.op;
            jumps_.push_back(std::move(j));
        }
        hnh_.resize(d_, d_);
        t1_.resize(d_, d_);
        t2_.resize(d_, d_);
    }

    void operator()(const Matrix& rho, double t, Matrix& out) {
        hnh_ = gen_.H.static_part + anti_;
        for (const auto& dr : gen_.H.drives) {
            const Complex phase = std::exp(-kI * dr.omega * t);
            hnh_ += phase * dr.op + std::conj(phase) * dr.op.adjoint();
        }
        t1_.noalias() = hnh_ * rho;
        t2_.noalias() = rho * hnh_.adjoint();
        out = -kI * (t1_ - t2_);
        for (const auto& j : jumps_) {
            if (j.dense) {
                t1_.noalias() = j.op * rho;
                t2_.noalias() = t1_ * j.op.adjoint();
                out += j.rate * t2_;
            } else {
                // t1 = o rho, then out += rate * t1 o^dag using o's triplets.
                t1_.setZero();
                for (const auto& [r, c, v] : j.trips) t1_.row(r) += v * rho.row(c);
                for (const auto& [r, c, v] : j.trips) out.col(r) += (j.rate * std::conj(v)) * t1_.col(c);
            }
        }
    }

    // Spectral bound on the generator used for the stability step limit.
    double lambda_bound() const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(gen_.H.static_part, Eigen::EigenvaluesOnly);
        double lam = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
        for (const auto& dr : gen_.H.drives) lam += 4.0 * dr.op.operatorNorm();
        for (const auto& c : gen_.collapse)
            lam += c.rate * (c.op.adjoint() * c.op).operatorNorm();
        return std::max(lam, 1e-300);
    }

    double rate_scale() const {
        double r = 0.0;
        for (const auto& c : gen_.collapse) r += c.rate;
        return r;
    }

  private:
    struct Jump {
        double rate;
        bool dense = false;
        Matrix op;
        std::vector<std::tuple<int, int, Complex>> trips;
    };

    const LindbladGenerator& gen_;
    int d_;
    Matrix anti_;
    std::vector<Jump> jumps_;
    Matrix hnh_, t1_, t2_;
};

struct Rk4Workspace {
    Matrix k1, k2, k3, k4, tmp;
    void resize(int d) {
        k1.resize(d, d); k2.resize(d, d); k3.resize(d, d); k4.resize(d, d); tmp.resize(d, d);
    }
};

void rk4_step(LindbladRhs& rhs, Matrix& rho, double t, double dt, Rk4Workspace& w) {
    rhs(rho, t, w.k1);
    w.tmp = rho + (0.5 * dt) * w.k1;
    rhs(w.tmp, t + 0.5 * dt, w.k2);
    w.tmp = rho + (0.5 * dt) * w.k2;
    rhs(w.tmp, t + 0.5 * dt, w.k3);
    w.tmp = rho + dt * w.k3;
    rhs(w.tmp, t + dt, w.k4);
    rho += (dt / 6.0) * (w.k1 + 2.0 * w.k2 + 2.0 * w.k3 + w.k4);
}

// Driven generators are resolved on the fastest drive period (the slow
// observables average over micromotion), with a stability cap from the
// spectral bound. Undriven generators resolve the full spectral width so the
// pointwise trajectory itself is accurate.
double fixed_step(const LindbladGenerator& gen, const LindbladRhs& rhs,
                  const PropagateOptions& opts) {
    const double lam = rhs.lambda_bound();
    const double wdrive = gen.H.max_drive_frequency();
    if (wdrive > 0.0)
        return std::min(2.0 * M_PI / (opts.steps_per_drive_period * wdrive),
                        opts.stability_margin / lam);
    return 2.0 * M_PI / (opts.steps_per_drive_period * lam);
}

}  // namespace

std::vector<DensityMatrix> propagate(const LindbladGenerator& gen, const DensityMatrix& rho0,
                                     const std::vector<double>& t_grid,
                                     const PropagateOptions& opts) {
    if (t_grid.empty()) throw std::invalid_argument("propagate: empty time grid");
    for (size_t i = 1; i < t_grid.size(); ++i)
        if (t_grid[i] <= t_grid[i - 1])
            throw std::invalid_argument("propagate: time grid must be strictly increasing");
    if (!(rho0.space == gen.H.space))
        throw std::invalid_argument("propagate: state space mismatch");

    LindbladRhs rhs(gen);
    Rk4Workspace w;
    w.resize(gen.H.space.dim());
    const double dt0 = fixed_step(gen, rhs, opts);
    const double rate = std::max(rhs.rate_scale(), 1e-300);

    std::vector<DensityMatrix> out;
    out.reserve(t_grid.size());
    Matrix rho = rho0.mat;
    out.push_back({gen.H.space, rho});

    double drift_accum = 0.0;
    for (size_t seg = 1; seg < t_grid.size(); ++seg) {
        const double t0 = t_grid[seg - 1];
        const double span = t_grid[seg] - t0;
        const long n = std::max<long>(1, long(std::ceil(span / dt0)));
        const double dt = span / double(n);
        for (long k = 0; k < n; ++k) {
            rk4_step(rhs, rho, t0 + k * dt, dt, w);
            const double tr = rho.trace().real();
            if (!std::isfinite(tr) || tr <= 0.0)
                throw std::runtime_error("propagate: integration diverged; refine the step");
            drift_accum += std::abs(tr - 1.0);
            rho /= tr;
        }
        const double budget = opts.trace_drift_tol * (1.0 + rate * (t_grid[seg] - t_grid.front()));
        if (drift_accum > budget)
            throw std::runtime_error(
                "propagate: trace drift " + std::to_string(drift_accum) +
                " exceeds bound; refine the step (increase steps_per_drive_period)");
        out.push_back({gen.H.space, rho});
    }
    return out;
}

std::vector<double> g2_tau(const LindbladGenerator& gen, const DensityMatrix& rho_ss,
                           const std::vector<double>& tau_grid, const PropagateOptions& opts) {
    if (!gen.H.time_independent())
        throw std::invalid_argument("g2_tau: requires a time-independent generator");
    if (tau_grid.empty()) throw std::invalid_argument("g2_tau: empty tau grid");
    if (tau_grid.front() != 0.0)
        throw std::invalid_argument("g2_tau: tau grid must start at 0");

    const Matrix a = annihilation(gen.H.space).mat;
    const Matrix num = a.adjoint() * a;
    const double nbar = (rho_ss.mat * num).trace().real();
    if (nbar <= 1e-14)
        throw std::runtime_error("g2_tau: zero mean phonon number, correlation undefined");

    // B(0) = a rho a^dag is Hermitian PSD with trace nbar; normalized it
    // evolves exactly like a density matrix under the same generator.
    Matrix B = (a * rho_ss.mat * a.adjoint()) / nbar;
    DensityMatrix b0{gen.H.space, B};
    std::vector<DensityMatrix> states = propagate(gen, b0, tau_grid, opts);

    std::vector<double> out;
    out.reserve(states.size());
    for (const auto& s : states)
        out.push_back((s.mat * num).trace().real() / nbar);
    return out;
}

}  // namespace pbsim
