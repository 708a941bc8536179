// Acceptance suite: end-to-end checks of the blockade physics at the pinned
// operating points. Each criterion prints one [PASS]/[FAIL] line with the
// measured values; the process exits nonzero if any executed criterion fails.
//
//   pbsim_acceptance                 run all criteria
//   pbsim_acceptance --criterion 5   run one criterion

#include "pbsim/analytic.hpp"
#include "pbsim/device.hpp"
#include "pbsim/runner.hpp"

#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

using namespace pbsim;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr int kFockDim = 15;

struct PropertyTracker {
    double worst_herm = 0.0;
    double worst_trace = 0.0;
    double worst_mineig = 0.0;
    double worst_resid_rel = 0.0;
    int solves = 0;

    void observe(const DensityMatrix& rho, const SteadyStateInfo& info) {
        worst_herm = std::max(worst_herm, rho.hermiticity_error());
        worst_trace = std::max(worst_trace, std::abs(rho.trace() - 1.0));
        worst_mineig = std::min(worst_mineig, rho.min_eigenvalue());
        if (info.liouvillian_norm > 0.0)
            worst_resid_rel = std::max(worst_resid_rel, info.residual / info.liouvillian_norm);
        ++solves;
    }
};

PropertyTracker g_tracker;

SteadyPoint solve_tracked(const ModelParams& p) {
    SteadyPoint pt = solve_steady_point(p);
    g_tracker.observe(pt.rho, pt.info);
    return pt;
}

SteadyPoint solve_tracked(const SinglePhononParams& p) {
    SteadyPoint pt = solve_steady_point(p);
    g_tracker.observe(pt.rho, pt.info);
    return pt;
}

ModelParams fig5_params(double delta = 0.0) {
    ModelSpec s = *preset_config("fig5-delta0").model;
    s.delta = delta;
    s.fock_dim = kFockDim;
    return resolve_model(s);
}

ModelParams point_params(char which) {
    ModelSpec s = *preset_config(which == 'A' ? "pointA" : "pointB").model;
    s.fock_dim = kFockDim;
    return resolve_model(s);
}

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) ok = false;
        detail << (cond ? "  ok: " : "  VIOLATED: ") << what << "\n";
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// ---- criterion bodies ------------------------------------------------------

bool criterion_analytic_oracle(Check& c) {
    const ModelParams p0 = fig5_params();
    const SteadyPoint pt = solve_tracked(p0);
    const double eq20 = analytic_g2_min(p0);
    const double rel = std::abs(pt.report.g2 - eq20) / eq20;
    c.require(rel < 0.10, "numeric g2(0) vs closed-form minimum: rel dev " + fmt(rel) +
                              " (numeric " + fmt(pt.report.g2) + ", closed form " + fmt(eq20) +
                              "), bound 0.10");

    double worst = 0.0, at = 0.0;
    const double geff = p0.g_eff();
    for (int i = 0; i < 161; ++i) {
        const double d = -4.0 * geff + 8.0 * geff * i / 160.0;
        const SteadyPoint pi = solve_tracked(fig5_params(d));
        if (!(pi.report.g2 < 1.0)) continue;
        const ModelParams pd = fig5_params(d);
        const double dev = std::abs(pi.report.g2 - analytic_g2(pd)) / analytic_g2(pd);
        if (dev > worst) {
            worst = dev;
            at = d / geff;
        }
    }
    c.require(worst < 0.15, "closed-form curve tracking where g2 < 1: worst rel dev " +
                                fmt(worst) + " at delta/g_eff = " + fmt(at) + ", bound 0.15");
    return c.ok;
}

bool criterion_blockade_dip(Check& c) {
    const double geff = fig5_params().g_eff();
    const double step = 8.0 * geff / 160.0;
    double best = 1e300, at = 1e300;
    for (int i = 0; i < 161; ++i) {
        const double d = -4.0 * geff + 8.0 * geff * i / 160.0;
        const SteadyPoint pi = solve_tracked(fig5_params(d));
        if (pi.report.g2 < best) {
            best = pi.report.g2;
            at = d;
        }
    }
    c.require(std::abs(at) < step, "global minimum at |delta| = " + fmt(std::abs(at) / geff) +
                                       " g_eff, within one grid step of resonance");
    return c.ok;
}

bool criterion_criteria_flags(Check& c) {
    const SteadyPoint pt = solve_tracked(fig5_params());
    const BlockadeReport& r = pt.report;
    c.require(r.criterion_i, "g2(0) = " + fmt(r.g2) + " < f = " + fmt(r.f));
    c.require(r.criterion_ii, "g1(0) = " + fmt(r.g1) + " >= f1 = " + fmt(r.f1));
    c.require(r.P(1) > r.poisson(1),
              "P(1) = " + fmt(r.P(1)) + " > Poisson(1) = " + fmt(r.poisson(1)));
    c.require(r.P(2) < r.poisson(2),
              "P(2) = " + fmt(r.P(2)) + " < Poisson(2) = " + fmt(r.poisson(2)));
    return c.ok;
}

bool criterion_fidelity_knee(Check& c) {
    const ModelParams base = fig5_params();
    std::vector<double> ratio, F, g2;
    for (int i = 1; i <= 40; ++i) {
        const double r = 0.05 * i;  // eps_L'/gamma_m_eff
        ModelParams p = base;
        p.eps_L = r * p.gamma_m_eff / p.squeeze.U;
        const SteadyPoint pt = solve_tracked(p);
        ratio.push_back(r);
        F.push_back(pt.report.fidelity);
        g2.push_back(pt.report.g2);
    }
    double minF_low = 1.0;
    for (size_t i = 0; i < ratio.size(); ++i)
        if (ratio[i] <= 0.5 + 1e-12) minF_low = std::min(minF_low, F[i]);
    c.require(minF_low >= 0.99, "F >= 0.99 for eps'/gamma <= 0.5 (min " + fmt(minF_low) + ")");
    bool f_dec = true, g_inc = true;
    for (size_t i = 0; i + 1 < ratio.size(); ++i) {
        if (ratio[i] < 0.5 - 1e-12) continue;
        if (F[i + 1] > F[i]) f_dec = false;
        if (g2[i + 1] < g2[i]) g_inc = false;
    }
    c.require(f_dec, "fidelity decreasing over eps'/gamma in [0.5, 2]");
    c.require(g_inc, "g2 increasing over eps'/gamma in [0.5, 2]");
    return c.ok;
}

bool criterion_points_ab(Check& c) {
    const SteadyPoint a = solve_tracked(point_params('A'));
    c.require(a.report.g2 < 1e-3, "point A: g2 = " + fmt(a.report.g2) + " < 1e-3");
    c.require(a.report.P(1) > 0.1, "point A: P(1) = " + fmt(a.report.P(1)) + " > 0.1");
    const SteadyPoint b = solve_tracked(point_params('B'));
    const double boundB = std::pow(10.0, -2.5);
    c.require(b.report.g2 < boundB, "point B: g2 = " + fmt(b.report.g2) + " < 10^-2.5");
    c.require(b.report.P(1) > 0.1, "point B: P(1) = " + fmt(b.report.P(1)) + " > 0.1");
    return c.ok;
}

bool criterion_monotone_enhancement(Check& c) {
    ModelSpec base = *preset_config("fig6a-q1e7").model;
    base.fock_dim = kFockDim;
    double prev = 1e300, last = 0.0;
    bool monotone = true;
    for (int i = 0; i < 31; ++i) {
        ModelSpec s = base;
        s.r_p = 3.0 * i / 30.0;
        const SteadyPoint pt = solve_tracked(resolve_model(s));
        if (pt.report.g2 > prev) monotone = false;
        prev = pt.report.g2;
        last = pt.report.g2;
    }
    c.require(monotone, "g2 decreases monotonically in r_p over [0, 3] at Q = 1e7");
    c.require(last < 1e-2, "g2(r_p = 3) = " + fmt(last) + " < 1e-2");
    return c.ok;
}

bool criterion_dephasing_robustness(Check& c) {
    ModelParams p = point_params('A');
    p.gamma_z = kTwoPi * 1000.0;
    const SteadyPoint pt = solve_tracked(p);
    c.require(pt.report.g2 < 0.1, "g2 at gamma_z = 2pi x 1 kHz: " + fmt(pt.report.g2) + " < 0.1");
    c.require(pt.report.n_mean > 0.1, "n_mean = " + fmt(pt.report.n_mean) + " > 0.1");

    double nmin = 1e300, nmax = 0.0;
    for (int i = 0; i < 41; ++i) {
        ModelParams pi = point_params('A');
        pi.gamma_z = kTwoPi * std::exp(std::log(1.0) + (std::log(1500.0)) * i / 40.0);
        const SteadyPoint pp = solve_tracked(pi);
        nmin = std::min(nmin, pp.report.n_mean);
        nmax = std::max(nmax, pp.report.n_mean);
    }
    const double var = (nmax - nmin) / nmin;
    c.require(var < 0.10, "n_mean variation over gamma_z in 2pi x [1, 1500] Hz: " + fmt(var) +
                              " < 0.10");
    return c.ok;
}

bool criterion_thermal_robustness(Check& c) {
    ModelSpec base = *preset_config("fig7b").model;
    base.fock_dim = kFockDim;
    double worst_g2 = 0.0, worst_at = 0.0, n200 = 0.0;
    for (int i = 0; i < 41; ++i) {
        ModelSpec s = base;
        const double nth = std::exp(std::log(1.0) + std::log(200.0) * i / 40.0);
        s.n_th = nth;
        const SteadyPoint pt = solve_tracked(resolve_model(s));
        if (pt.report.g2 > worst_g2) {
            worst_g2 = pt.report.g2;
            worst_at = nth;
        }
        if (i == 40) n200 = pt.report.n_mean;
    }
    c.require(worst_g2 < 1e-2, "max g2 over n_th in [1, 200]: " + fmt(worst_g2) + " at n_th = " +
                                   fmt(worst_at) + ", bound 1e-2");
    c.require(std::abs(n200 - 0.013) < 0.3 * 0.013,
              "n_mean(n_th = 200) = " + fmt(n200) + " within 0.013 +- 30%");
    return c.ok;
}

bool criterion_detection(Check& c) {
    ModelSpec base = *preset_config("fig8").model;
    base.fock_dim = kFockDim;
    double worst_ratio = 1e300;
    double best_g2 = 1e300, p2_at_best = 0.0, pe_at_best = 0.0;
    for (int i = 0; i < 41; ++i) {
        ModelSpec s = base;
        s.eps_L = (kTwoPi * 1.1) * std::exp(std::log(0.01) + std::log(100.0) * i / 40.0);
        const SteadyPoint pt = solve_tracked(resolve_model(s));
        if (pt.report.P2 > 0.0) worst_ratio = std::min(worst_ratio, pt.report.Pe / pt.report.P2);
        if (pt.report.g2 < best_g2) {
            best_g2 = pt.report.g2;
            p2_at_best = pt.report.P2;
            pe_at_best = pt.report.Pe;
        }
    }
    c.require(worst_ratio > 1.5, "Pe/P2 everywhere on the drive sweep: min " + fmt(worst_ratio) +
                                     " > 1.5");
    c.require(p2_at_best < 1e-4 && pe_at_best < 1e-4,
              "at the lowest g2 (" + fmt(best_g2) + "): P2 = " + fmt(p2_at_best) + ", Pe = " +
                  fmt(pe_at_best) + ", both < 1e-4");
    return c.ok;
}

bool criterion_delayed_correlation(Check& c) {
    for (double rp : {1.0, 2.0, 3.0}) {
        ModelSpec s = *preset_config("figA3").model;
        s.fock_dim = kFockDim;
        s.r_p = rp;
        const ModelParams p = resolve_model(s);
        const SteadyPoint pt = solve_tracked(p);
        std::vector<double> taus;
        for (int i = 0; i < 201; ++i) taus.push_back(20.0 / p.gamma_m_eff * i / 200.0);
        LindbladGenerator gen{{p.space(), build_effective_hamiltonian(p).mat, {}},
                              collapse_set(p)};
        const std::vector<double> g2 = g2_tau(gen, pt.rho, taus);
        double worst_under = 0.0;
        for (double v : g2) worst_under = std::min(worst_under, v - g2.front());
        c.require(worst_under >= -1e-9,
                  "r_p = " + fmt(rp) + ": g2(tau) >= g2(0) everywhere (worst " +
                      fmt(worst_under) + ")");
        c.require(std::abs(g2.back() - 1.0) < 0.02,
                  "r_p = " + fmt(rp) + ": g2 at gamma tau = 20 is " + fmt(g2.back()) +
                      ", within 2% of 1");
    }
    return c.ok;
}

bool criterion_full_vs_effective(Check& c) {
    ModelParams p = fig5_params();
    p.delta_ed = 1e3 * p.g_eff();
    p.delta_s = 0.5 * p.delta_ed;
    const SteadyPoint ref = solve_tracked(fig5_params());

    const double T = 20.0 / p.gamma_m_eff;
    std::vector<double> grid{0.0};
    for (int i = 0; i < 81; ++i) grid.push_back(0.9 * T + 0.1 * T * i / 80.0);
    LindbladGenerator gen{squeezed_full_decomposition(p), collapse_set(p)};
    const auto states = propagate(gen, vacuum_state(p.space()), grid);

    const HilbertSpace sp = p.space();
    const int pts[4][2] = {{0, kSpinD}, {1, kSpinD}, {2, kSpinD}, {0, kSpinE}};
    double worst = 0.0;
    for (int q = 0; q < 4; ++q) {
        double avg = 0.0;
        for (size_t k = 1; k < states.size(); ++k)
            avg += states[k].mat(sp.index(pts[q][0], pts[q][1]),
                                 sp.index(pts[q][0], pts[q][1])).real();
        avg /= double(states.size() - 1);
        const double want = ref.rho.mat(sp.index(pts[q][0], pts[q][1]),
                                        sp.index(pts[q][0], pts[q][1])).real();
        worst = std::max(worst, std::abs(avg - want));
        c.detail << "  " << basis_label(sp, sp.index(pts[q][0], pts[q][1])) << ": time-avg "
                 << fmt(avg) << " vs steady " << fmt(want) << "\n";
    }
    c.require(worst < 0.05, "time-averaged populations match within 0.05 absolute (worst " +
                                fmt(worst) + ")");
    return c.ok;
}

bool criterion_single_phonon(Check& c) {
    SinglePhononSpec base = *preset_config("figA2-rp15").single_phonon;
    base.fock_dim = kFockDim;
    double best_g2 = 1e300, p1_at_best = 0.0, q_at_best = 0.0;
    for (int i = 0; i < 41; ++i) {
        SinglePhononSpec s = base;
        s.Q = std::exp(std::log(1e7) + std::log(10.0) * i / 40.0);
        const SteadyPoint pt = solve_tracked(resolve_single_phonon(s));
        if (pt.report.g2 < best_g2) {
            best_g2 = pt.report.g2;
            p1_at_best = pt.report.P(1);
            q_at_best = *s.Q;
        }
    }
    c.require(best_g2 < std::pow(10.0, -1.6),
              "best g2 over Q in [1e7, 1e8]: " + fmt(best_g2) + " at Q = " + fmt(q_at_best) +
                  ", bound 10^-1.6");
    c.require(p1_at_best > std::pow(10.0, -1.4),
              "P(1) at the best point: " + fmt(p1_at_best) + " > 10^-1.4");
    return c.ok;
}

bool criterion_device_numbers(Check& c) {
    DeviceGeometry g;
    const CantileverMode m = cantilever_mode(g);
    c.require(std::abs(m.omega_m / (kTwoPi * 3.8e6) - 1.0) < 0.05,
              "omega_m = 2pi x " + fmt(m.omega_m / kTwoPi / 1e6) + " MHz within 5% of 3.8 MHz");
    c.require(std::abs(m.mass / 7e-18 - 1.0) < 0.05,
              "mass = " + fmt(m.mass) + " kg within 5% of 7e-18");
    c.require(std::abs(m.z_zpf / 563e-15 - 1.0) < 0.05,
              "z_zpf = " + fmt(m.z_zpf * 1e15) + " fm within 5% of 563");
    const double G = second_order_gradient(g);
    c.require(G > 7.9e14 / 2.0 && G < 7.9e14 * 2.0,
              "G(80 nm) = " + fmt(G) + " within a factor of 2 of 7.9e14");
    const double nth = thermal_occupation(kTwoPi * 3.8e6, 0.01);
    c.require(std::abs(nth - 54.0) < 2.0, "n_th(2pi x 3.8 MHz, 10 mK) = " + fmt(nth) + " = 54 +- 2");
    const double dg = misalignment_error(g, 10.0 * M_PI / 180.0);
    c.require(std::abs(dg) < 0.05, "misalignment delta_g(10 deg) = " + fmt(dg) + ", |.| < 0.05");
    return c.ok;
}

bool criterion_exact_identities(Check& c) {
    for (double rp : {0.0, 1.0, 2.0, 3.0}) {
        ModelParams p = fig5_params();
        p.squeeze = SqueezeTransform::from_r(rp);
        const double c2 = std::cosh(rp) * std::cosh(rp);
        c.require(std::abs(p.g_eff() / p.g - c2) <= 1e-10 * c2,
                  "g_eff/g = cosh^2(" + fmt(rp) + ") to 1e-10");
        c.require(std::abs(p.squeeze.U * p.squeeze.U - p.squeeze.V * p.squeeze.V - 1.0) < 1e-12,
                  "U^2 - V^2 = 1 at r_p = " + fmt(rp));
    }
    // splitting against a dense eigensolve
    ModelParams p = fig5_params();
    p.eps_L = 0.0;
    Operator h = build_effective_hamiltonian(p);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat, Eigen::EigenvaluesOnly);
    double pos = 1e300, neg = -1e300;
    for (auto ev : es.eigenvalues()) {
        if (ev > 1e-9 && ev < pos) pos = ev;
        if (ev < -1e-9 && ev > neg) neg = ev;
    }
    const double split = anharmonic_splitting(p);
    c.require(std::abs((pos - neg) - split) <= 1e-10 * split,
              "2 sqrt(2) g_eff splitting matches the eigensolve to 1e-10");
    // closed-form detuning symmetry is exact
    ModelParams pp = fig5_params(37.0), pm = fig5_params(-37.0);
    c.require(analytic_g2(pp) == analytic_g2(pm), "analytic g2 is exactly even in delta");
    return c.ok;
}

bool criterion_property_suite(Check& c) {
    // Truncation convergence at the named operating points, N = 15 -> 20.
    struct Named {
        std::string name;
        std::function<double(int)> g2_of;
    };
    std::vector<Named> points;
    points.push_back({"fig5-delta0", [](int n) {
        ModelParams p = fig5_params();
        p.fock_dim = n;
        return solve_tracked(p).report.g2;
    }});
    for (char w : {'A', 'B'})
        points.push_back({std::string("point") + w, [w](int n) {
            ModelParams p = point_params(w);
            p.fock_dim = n;
            return solve_tracked(p).report.g2;
        }});
    points.push_back({"fig6a r_p=3 Q=1e7", [](int n) {
        ModelSpec s = *preset_config("fig6a-q1e7").model;
        s.r_p = 3.0;
        s.fock_dim = n;
        return solve_tracked(resolve_model(s)).report.g2;
    }});
    points.push_back({"fig7a gamma_z=1kHz", [](int n) {
        ModelParams p = point_params('A');
        p.gamma_z = kTwoPi * 1000.0;
        p.fock_dim = n;
        return solve_tracked(p).report.g2;
    }});
    points.push_back({"fig7b n_th=200", [](int n) {
        ModelSpec s = *preset_config("fig7b").model;
        s.n_th = 200.0;
        s.fock_dim = n;
        return solve_tracked(resolve_model(s)).report.g2;
    }});
    points.push_back({"fig8 min drive", [](int n) {
        ModelSpec s = *preset_config("fig8").model;
        s.eps_L = 0.01 * kTwoPi * 1.1;
        s.fock_dim = n;
        return solve_tracked(resolve_model(s)).report.g2;
    }});
    points.push_back({"figA2 r_p=1.5", [](int n) {
        SinglePhononSpec s = *preset_config("figA2-rp15").single_phonon;
        s.Q = 5.6e7;
        s.fock_dim = n;
        return solve_tracked(resolve_single_phonon(s)).report.g2;
    }});

    for (auto& pt : points) {
        const double a = pt.g2_of(15), b = pt.g2_of(20);
        const double rel = std::abs(a - b) / b;
        c.require(rel < 0.01, pt.name + ": truncation drift " + fmt(rel) + " < 1% (N 15 -> 20)");
    }

    c.require(g_tracker.worst_herm < 1e-9,
              "every steady state Hermitian: worst " + fmt(g_tracker.worst_herm) + " < 1e-9");
    c.require(g_tracker.worst_trace < 1e-8,
              "unit trace: worst " + fmt(g_tracker.worst_trace) + " < 1e-8");
    c.require(g_tracker.worst_mineig > -1e-7,
              "positivity: min eigenvalue " + fmt(g_tracker.worst_mineig) + " > -1e-7");
    c.require(g_tracker.worst_resid_rel < 1e-10,
              "solver residual: worst " + fmt(g_tracker.worst_resid_rel) + " ||L|| < 1e-10 ||L||");
    c.detail << "  (" << g_tracker.solves << " steady-state solves observed)\n";
    return c.ok;
}

struct Criterion {
    int id;
    const char* name;
    std::function<bool(Check&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "analytic-numeric oracle", criterion_analytic_oracle},
        {2, "blockade dip at resonance", criterion_blockade_dip},
        {3, "blockade criteria flags", criterion_criteria_flags},
        {4, "truncation-fidelity knee", criterion_fidelity_knee},
        {5, "operating points A and B", criterion_points_ab},
        {6, "monotone enhancement in r_p", criterion_monotone_enhancement},
        {7, "dephasing robustness", criterion_dephasing_robustness},
        {8, "thermal robustness", criterion_thermal_robustness},
        {9, "qubit-based detection", criterion_detection},
        {10, "delayed correlation ordering", criterion_delayed_correlation},
        {11, "full vs effective Hamiltonian", criterion_full_vs_effective},
        {12, "single-phonon-coupling variant", criterion_single_phonon},
        {13, "device numbers", criterion_device_numbers},
        {14, "exact identities", criterion_exact_identities},
        {15, "steady-state property suite", criterion_property_suite},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    }

    int failures = 0;
    for (const auto& cr : criteria()) {
        if (only != 0 && cr.id != only) continue;
        Check c;
        bool ok = false;
        try {
            ok = cr.run(c);
        } catch (const std::exception& e) {
            c.detail << "  exception: " << e.what() << "\n";
            ok = false;
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << cr.id << ": " << cr.name
                  << "\n" << c.detail.str();
        if (!ok) ++failures;
    }
    if (only == 0)
        std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) +
                      " criterion(s) failed") << "\n";
    return failures == 0 ? 0 : 1;
}
