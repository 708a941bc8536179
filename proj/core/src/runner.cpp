#include "pbsim/runner.hpp"

#include "pbsim/analytic.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace pbsim {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

#ifdef PBSIM_VERSION_STRING
const char* kVersion = PBSIM_VERSION_STRING;
#else
const char* kVersion = "unknown";
#endif

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int k = 0; k < jobs; ++k)
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& w : workers) w.join();
}

constexpr int kReportP = 5;  // P(0..4) and the matched Poisson weights

std::vector<std::string> report_columns() {
    std::vector<std::string> cols = {"n_mean", "g1", "g2", "g3"};
    for (int m = 0; m < kReportP; ++m) cols.push_back("P" + std::to_string(m));
    for (int m = 0; m < kReportP; ++m) cols.push_back("poisson" + std::to_string(m));
    cols.insert(cols.end(), {"f", "f1", "criterion_i", "criterion_ii", "fidelity", "P2_fock", "Pe", "error"});
    return cols;
}

std::vector<Cell> report_row(const BlockadeReport& r) {
    std::vector<Cell> row;
    row.push_back(Cell::number(r.n_mean));
    row.push_back(Cell::number(r.g1));
    row.push_back(Cell::number(r.g2));
    row.push_back(Cell::number(r.g3));
    for (int m = 0; m < kReportP; ++m)
        row.push_back(Cell::number(m < r.P.size() ? r.P(m) : 0.0));
    for (int m = 0; m < kReportP; ++m)
        row.push_back(Cell::number(m < r.poisson.size() ? r.poisson(m) : 0.0));
    row.push_back(Cell::number(r.f));
    row.push_back(Cell::number(r.f1));
    row.push_back(Cell::boolean(r.criterion_i));
    row.push_back(Cell::boolean(r.criterion_ii));
    row.push_back(Cell::number(r.fidelity));
    row.push_back(Cell::number(r.P2));
    row.push_back(Cell::number(r.Pe));
    row.push_back(Cell::none());
    return row;
}

std::vector<Cell> error_row(const std::string& message) {
    std::vector<Cell> row(report_columns().size() - 1, Cell::none());
    row.push_back(Cell::text(message));
    return row;
}

void add_common_meta(Table& t, const RunConfig& c) {
    t.add_meta("version", std::string(kVersion));
    if (!c.preset.empty()) t.add_meta("preset", c.preset);
}

void add_model_meta(Table& t, const ModelSpec& spec, int fock_dim) {
    t.add_meta("g_rad_per_s", spec.g);
    t.add_meta("r_p", spec.r_p);
    if (spec.eps_L_eff) t.add_meta("eps_L_eff_rad_per_s", *spec.eps_L_eff);
    else t.add_meta("eps_L_rad_per_s", spec.eps_L);
    t.add_meta("delta_rad_per_s", spec.delta);
    t.add_meta("gamma_z_rad_per_s", spec.gamma_z);
    if (spec.gamma_m_eff) t.add_meta("gamma_m_eff_rad_per_s", *spec.gamma_m_eff);
    if (spec.Q) t.add_meta("Q", *spec.Q);
    t.add_meta("omega_m_rad_per_s", spec.omega_m);
    t.add_meta("n_th", spec.n_th);
    t.add_meta("fock_dim", double(fock_dim));
}

void add_single_phonon_meta(Table& t, const SinglePhononSpec& spec, int fock_dim) {
    t.add_meta("g0_rad_per_s", spec.g0);
    t.add_meta("r_p", spec.r_p);
    t.add_meta("eps_L_rad_per_s", spec.eps_L);
    t.add_meta("gamma_z_rad_per_s", spec.gamma_z);
    if (spec.gamma_m_eff) t.add_meta("gamma_m_eff_rad_per_s", *spec.gamma_m_eff);
    if (spec.Q) t.add_meta("Q", *spec.Q);
    t.add_meta("omega_m_rad_per_s", spec.omega_m);
    t.add_meta("n_th", spec.n_th);
    t.add_meta("fock_dim", double(fock_dim));
    if (spec.delta) t.add_meta("delta_rad_per_s", *spec.delta);
    else t.add_meta("drive", "dressed-resonance");
}

void add_axes_meta(Table& t, const std::vector<SweepAxis>& axes) {
    for (size_t k = 0; k < axes.size(); ++k) {
        const auto& a = axes[k];
        std::ostringstream os;
        os << a.param << " " << format_double(a.min) << " .. " << format_double(a.max)
           << " count=" << a.count << (a.log ? " log" : " linear");
        t.add_meta("axis" + std::to_string(k), os.str());
    }
}

int effective_fock_dim(const RunConfig& c, int spec_dim) {
    return c.fock_dim_override > 0 ? c.fock_dim_override : spec_dim;
}

}  // namespace

std::vector<CollapseOp> collapse_set(const ModelParams& p) {
    const HilbertSpace sp = p.space();
    return {{annihilation(sp).mat, p.gamma_m_eff}, {spin_excited_projector(sp).mat, p.gamma_z}};
}

std::vector<CollapseOp> collapse_set(const SinglePhononParams& p) {
    const HilbertSpace sp = p.space();
    return {{annihilation(sp).mat, p.gamma_m_eff}, {spin_excited_projector(sp).mat, p.gamma_z}};
}

SteadyPoint solve_steady_point(const ModelParams& p) {
    const Liouvillian L = build_liouvillian(build_effective_hamiltonian(p), collapse_set(p));
    SteadyPoint out{DensityMatrix{}, {}, {}};
    out.rho = steady_state(L, &out.info);
    out.report = make_report(out.rho);
    return out;
}

SteadyPoint solve_steady_point(const SinglePhononParams& p) {
    const Liouvillian L = build_liouvillian(build_single_phonon_rotated(p), collapse_set(p));
    SteadyPoint out{DensityMatrix{}, {}, {}};
    out.rho = steady_state(L, &out.info);
    out.report = make_report(out.rho);
    return out;
}

Table cmd_device(const RunConfig& config) {
    if (!config.device) throw std::invalid_argument("cmd_device: config has no device geometry");
    const DeviceGeometry base = *config.device;
    const DeviceDerived derived = derive_device(base);

    Table t;
    add_common_meta(t, config);
    t.add_meta("omega_m_rad_per_s", derived.omega_m);
    t.add_meta("omega_m_over_2pi_hz", derived.omega_m / kTwoPi);
    t.add_meta("mass_kg", derived.mass);
    t.add_meta("z_zpf_m", derived.z_zpf);
    t.add_meta("B0_T", derived.B0);
    t.add_meta("G_T_per_m2", derived.G);
    t.add_meta("g_rad_per_s", derived.g);
    t.add_meta("g_over_2pi_hz", derived.g / kTwoPi);
    t.add_meta("n_th", derived.n_th);

    SweepAxis axis{"gap", 40e-9, 100e-9, 31, false};
    if (!config.axes.empty()) {
        if (config.axes.size() != 1 || config.axes[0].param != "gap")
            throw std::invalid_argument("cmd_device: only a single 'gap' sweep axis is supported");
        axis = config.axes[0];
    }
    add_axes_meta(t, {axis});

    t.columns = {"gap_m", "B0_T", "G_T_per_m2", "g_rad_per_s", "g_over_2pi_hz", "error"};
    for (double gap : axis_values(axis)) {
        std::vector<Cell> row;
        row.push_back(Cell::number(gap));
        try {
            DeviceGeometry g = base;
            g.gap = gap;
            const double B0 = axial_field(g, 0.0);
            const double G = second_order_gradient(g);
            const double gc = two_phonon_coupling(derived.z_zpf, G);
            row.push_back(Cell::number(B0));
            row.push_back(Cell::number(G));
            row.push_back(Cell::number(gc));
            row.push_back(Cell::number(gc / kTwoPi));
            row.push_back(Cell::none());
        } catch (const std::exception& e) {
            row.resize(1);
            row.insert(row.end(), {Cell::none(), Cell::none(), Cell::none(), Cell::none(),
                                   Cell::text(e.what())});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table cmd_steady(const RunConfig& config) {
    Table t;
    add_common_meta(t, config);
    t.columns = report_columns();
    if (config.model) {
        ModelSpec spec = *config.model;
        spec.fock_dim = effective_fock_dim(config, spec.fock_dim);
        add_model_meta(t, spec, spec.fock_dim);
        t.rows.push_back(report_row(solve_steady_point(resolve_model(spec)).report));
    } else if (config.single_phonon) {
        SinglePhononSpec spec = *config.single_phonon;
        spec.fock_dim = effective_fock_dim(config, spec.fock_dim);
        add_single_phonon_meta(t, spec, spec.fock_dim);
        t.rows.push_back(report_row(solve_steady_point(resolve_single_phonon(spec)).report));
    } else {
        throw std::invalid_argument("cmd_steady: config has no model parameters");
    }
    return t;
}

Table cmd_sweep(const RunConfig& config) {
    if (config.axes.empty() || config.axes.size() > 2)
        throw std::invalid_argument("cmd_sweep: requires 1 or 2 sweep axes");
    if (!config.model && !config.single_phonon)
        throw std::invalid_argument("cmd_sweep: config has no model parameters");

    Table t;
    add_common_meta(t, config);
    if (config.model) {
        ModelSpec spec = *config.model;
        spec.fock_dim = effective_fock_dim(config, spec.fock_dim);
        add_model_meta(t, spec, spec.fock_dim);
    } else {
        SinglePhononSpec spec = *config.single_phonon;
        spec.fock_dim = effective_fock_dim(config, spec.fock_dim);
        add_single_phonon_meta(t, spec, spec.fock_dim);
    }
    add_axes_meta(t, config.axes);

    std::vector<std::vector<double>> grids;
    for (const auto& a : config.axes) grids.push_back(axis_values(a));
    const int n1 = int(grids[0].size());
    const int n2 = grids.size() == 2 ? int(grids[1].size()) : 1;
    const int total = n1 * n2;

    for (const auto& a : config.axes) t.columns.push_back(a.param);
    const auto rep_cols = report_columns();
    t.columns.insert(t.columns.end(), rep_cols.begin(), rep_cols.end());

    std::vector<std::vector<Cell>> rows(total);
    parallel_for(total, config.jobs, [&](int idx) {
        const int i = idx / n2;  // axis-major: first axis is the slow index
        const int j = idx % n2;
        std::vector<Cell> axcells;
        axcells.push_back(Cell::number(grids[0][i]));
        if (grids.size() == 2) axcells.push_back(Cell::number(grids[1][j]));
        std::vector<Cell> rep;
        try {
            if (config.model) {
                ModelSpec spec = *config.model;
                spec.fock_dim = effective_fock_dim(config, spec.fock_dim);
                apply_axis_value(spec, config.axes[0].param, grids[0][i]);
                if (grids.size() == 2) apply_axis_value(spec, config.axes[1].param, grids[1][j]);
                rep = report_row(solve_steady_point(resolve_model(spec)).report);
            } else {
                SinglePhononSpec spec = *config.single_phonon;
                spec.fock_dim = effective_fock_dim(config, spec.fock_dim);
                apply_axis_value(spec, config.axes[0].param, grids[0][i]);
                if (grids.size() == 2) apply_axis_value(spec, config.axes[1].param, grids[1][j]);
                rep = report_row(solve_steady_point(resolve_single_phonon(spec)).report);
            }
        } catch (const std::exception& e) {
            rep = error_row(e.what());
        }
        axcells.insert(axcells.end(), rep.begin(), rep.end());
        rows[idx] = std::move(axcells);
    });
    t.rows = std::move(rows);
    return t;
}

Table cmd_g2tau(const RunConfig& config) {
    if (!config.model) throw std::invalid_argument("cmd_g2tau: config has no model parameters");
    ModelSpec base = *config.model;
    base.fock_dim = effective_fock_dim(config, base.fock_dim);

    Table t;
    add_common_meta(t, config);
    add_model_meta(t, base, base.fock_dim);
    t.add_meta("max_gamma_tau", config.tau.max_gamma_tau);
    t.add_meta("tau_count", double(config.tau.count));
    t.columns = {"r_p", "gamma_tau", "g2_tau", "error"};

    std::vector<double> rps = config.rp_list.empty() ? std::vector<double>{base.r_p} : config.rp_list;
    for (double rp : rps) {
        ModelSpec spec = base;
        spec.r_p = rp;
        try {
            const ModelParams p = resolve_model(spec);
            const SteadyPoint pt = solve_steady_point(p);
            std::vector<double> taus;
            taus.reserve(config.tau.count);
            for (int i = 0; i < config.tau.count; ++i)
                taus.push_back(config.tau.max_gamma_tau * i /
                               double(std::max(1, config.tau.count - 1)) / p.gamma_m_eff);
            LindbladGenerator gen{{p.space(), build_effective_hamiltonian(p).mat, {}},
                                  collapse_set(p)};
            const std::vector<double> vals = g2_tau(gen, pt.rho, taus);
            for (size_t i = 0; i < vals.size(); ++i)
                t.rows.push_back({Cell::number(rp), Cell::number(taus[i] * p.gamma_m_eff),
                                  Cell::number(vals[i]), Cell::none()});
        } catch (const std::exception& e) {
            t.rows.push_back({Cell::number(rp), Cell::none(), Cell::none(), Cell::text(e.what())});
        }
    }
    return t;
}

namespace {

struct ValidateRow {
    std::string check;
    double measured;
    double threshold;
    std::string detail;
};

std::vector<Cell> validate_row(const ValidateRow& r) {
    return {Cell::text(r.check), Cell::number(r.measured), Cell::number(r.threshold),
            Cell::boolean(r.measured < r.threshold), Cell::text(r.detail)};
}

}  // namespace

Table cmd_validate(const RunConfig& config) {
    RunConfig cfg = config;
    if (!cfg.model) cfg.model = *preset_config("validate-fig5").model;
    ModelSpec spec = *cfg.model;
    spec.fock_dim = effective_fock_dim(cfg, spec.fock_dim);

    Table t;
    add_common_meta(t, cfg);
    add_model_meta(t, spec, spec.fock_dim);
    t.columns = {"check", "measured", "threshold", "pass", "detail"};

    // 1. closed-form minimum vs full Lindblad solve at delta = 0.
    ModelSpec s0 = spec;
    s0.delta = 0.0;
    const ModelParams p0 = resolve_model(s0);
    const SteadyPoint pt0 = solve_steady_point(p0);
    const double eq20 = analytic_g2_min(p0);
    {
        std::ostringstream d;
        d << "g2_numeric=" << format_double(pt0.report.g2) << " g2_eq20=" << format_double(eq20);
        t.rows.push_back(validate_row({"analytic-g2-delta0", std::abs(pt0.report.g2 - eq20) / eq20,
                                       0.10, d.str()}));
    }

    // 2. closed-form curve vs numerics across the detuning window, where g2 < 1.
    {
        double worst = 0.0;
        double at = 0.0;
        const double geff = p0.g_eff();
        const int npts = 81;
        for (int i = 0; i < npts; ++i) {
            ModelSpec si = spec;
            si.delta = -4.0 * geff + 8.0 * geff * i / double(npts - 1);
            const ModelParams pi = resolve_model(si);
            const double g2n = solve_steady_point(pi).report.g2;
            if (!(g2n < 1.0)) continue;
            const double g2a = analytic_g2(pi);
            const double dev = std::abs(g2n - g2a) / g2a;
            if (dev > worst) {
                worst = dev;
                at = si.delta / geff;
            }
        }
        std::ostringstream d;
        d << "worst at delta/g_eff=" << format_double(at);
        t.rows.push_back(validate_row({"analytic-g2-curve", worst, 0.15, d.str()}));
    }

    // 3. amplitude-model populations vs Lindblad populations.
    {
        const AmplitudeSolution amp = steady_amplitudes(p0);
        const HilbertSpace sp = p0.space();
        const double p1d = pt0.rho.mat(sp.index(1, kSpinD), sp.index(1, kSpinD)).real();
        const double p2d = pt0.rho.mat(sp.index(2, kSpinD), sp.index(2, kSpinD)).real();
        const double d1 = std::abs(std::norm(amp.C1d) - p1d) / p1d;
        const double d2 = std::abs(std::norm(amp.C2d) - p2d) / p2d;
        std::ostringstream d;
        d << "|C1d|^2=" << format_double(std::norm(amp.C1d)) << " P(1,D)=" << format_double(p1d)
          << " |C2d|^2=" << format_double(std::norm(amp.C2d)) << " P(2,D)=" << format_double(p2d);
        t.rows.push_back(validate_row({"amplitudes-vs-populations", std::max(d1, d2), 0.05, d.str()}));
    }

    // 4. full squeezed-frame Hamiltonian propagation vs effective-model steady
    // state: quasi-steady basis populations averaged over the final 10%.
    {
        ModelParams pb = p0;
        pb.delta_ed = cfg.b1_delta_ed_over_geff * p0.g_eff();
        pb.delta_s = 0.5 * pb.delta_ed;
        const double T = cfg.b1_evolve_time / pb.gamma_m_eff;
        std::vector<double> grid{0.0};
        const int navg = 81;
        for (int i = 0; i < navg; ++i) grid.push_back(0.9 * T + 0.1 * T * i / double(navg - 1));
        LindbladGenerator gen{squeezed_full_decomposition(pb), collapse_set(pb)};
        const auto states = propagate(gen, vacuum_state(pb.space()), grid);
        const HilbertSpace sp = pb.space();
        const int idx[4][2] = {{0, kSpinD}, {1, kSpinD}, {2, kSpinD}, {0, kSpinE}};
        double avg[4] = {0, 0, 0, 0};
        for (size_t k = 1; k < states.size(); ++k)
            for (int q = 0; q < 4; ++q)
                avg[q] += states[k].mat(sp.index(idx[q][0], idx[q][1]),
                                        sp.index(idx[q][0], idx[q][1])).real();
        double worst = 0.0;
        std::ostringstream d;
        for (int q = 0; q < 4; ++q) {
            avg[q] /= double(states.size() - 1);
            const double ref = pt0.rho.mat(sp.index(idx[q][0], idx[q][1]),
                                           sp.index(idx[q][0], idx[q][1])).real();
            worst = std::max(worst, std::abs(avg[q] - ref));
            d << basis_label(sp, sp.index(idx[q][0], idx[q][1])) << "="
              << format_double(avg[q]) << "/" << format_double(ref) << " ";
        }
        t.rows.push_back(validate_row({"full-vs-effective-populations", worst, 0.05, d.str()}));
    }

    // 5. truncation convergence N vs N+5.
    {
        ModelSpec s5 = s0;
        s5.fock_dim = s0.fock_dim + 5;
        const double g2a = pt0.report.g2;
        const double g2b = solve_steady_point(resolve_model(s5)).report.g2;
        std::ostringstream d;
        d << "g2(N=" << s0.fock_dim << ")=" << format_double(g2a)
          << " g2(N=" << s5.fock_dim << ")=" << format_double(g2b);
        t.rows.push_back(validate_row({"truncation-convergence", std::abs(g2a - g2b) / g2b, 0.01,
                                       d.str()}));
    }

    return t;
}

Table run_command(const std::string& command, const RunConfig& config) {
    if (command == "device") return cmd_device(config);
    if (command == "steady") return cmd_steady(config);
    if (command == "sweep") return cmd_sweep(config);
    if (command == "g2tau") return cmd_g2tau(config);
    if (command == "validate") return cmd_validate(config);
    throw std::invalid_argument("unknown command '" + command + "'");
}

void write_table(const Table& table, const RunConfig& config, std::ostream& fallback) {
    auto write = [&](std::ostream& os) {
        if (config.format == OutputFormat::json) write_json(table, os);
        else write_csv(table, os);
    };
    if (config.out_path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream out(config.out_path);
    if (!out) throw std::runtime_error("cannot open output file '" + config.out_path + "'");
    write(out);
}

}  // namespace pbsim
