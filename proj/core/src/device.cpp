#include "pbsim/device.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace pbsim {

void validate_geometry(const DeviceGeometry& g) {
    if (g.length <= 0 || g.width <= 0 || g.thickness <= 0)
        throw std::invalid_argument("DeviceGeometry: cantilever dimensions must be > 0");
    if (g.magnet_radius <= 0 || g.magnet_height <= 0 || g.gap <= 0)
        throw std::invalid_argument("DeviceGeometry: magnet dimensions must be > 0");
    if (g.mu0_Ms <= 0) throw std::invalid_argument("DeviceGeometry: mu0_Ms must be > 0");
    if (g.youngs_modulus <= 0 || g.density <= 0)
        throw std::invalid_argument("DeviceGeometry: material constants must be > 0");
    if (g.temperature <= 0) throw std::invalid_argument("DeviceGeometry: temperature must be > 0");
}

CantileverMode cantilever_mode(const DeviceGeometry& g) {
    validate_geometry(g);
    CantileverMode m;
    m.omega_m = 3.516 * (g.thickness / (g.length * g.length))
              * std::sqrt(g.youngs_modulus / (12.0 * g.density));
    m.mass = g.density * g.length * g.width * g.thickness / 4.0;
    m.z_zpf = std::sqrt(constants::hbar / (2.0 * m.mass * m.omega_m));
    return m;
}

double single_magnet_axial_closed(double radius, double z1, double z2, double mu0_Ms, double z) {
    auto f = [radius](double u) { return u / std::sqrt(u * u + radius * radius); };
    return 0.5 * mu0_Ms * (f(z - z1) - f(z - z2));
}

double axial_field(const DeviceGeometry& g, double z) {
    validate_geometry(g);
    const double d = 0.5 * g.gap, h = g.magnet_height;
    const bool inside = (z >= d && z <= d + h) || (z <= -d && z >= -d - h);
    if (inside) throw std::invalid_argument("axial_field: evaluation inside magnet material");
    return single_magnet_axial_closed(g.magnet_radius, d, d + h, g.mu0_Ms, z)
         + single_magnet_axial_closed(g.magnet_radius, -d - h, -d, g.mu0_Ms, z);
}

namespace {

// Richardson-extrapolated central second difference with adaptive step.
double second_derivative(const std::function<double(double)>& f, double step0, double rel_tol) {
    double h = step0;
    double prev = 0.0;
    bool have_prev = false;
    for (int it = 0; it < 12; ++it) {
        const double d2 = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        const double d2h = (f(0.5 * h) - 2.0 * f(0.0) + f(-0.5 * h)) / (0.25 * h * h);
        const double rich = (4.0 * d2h - d2) / 3.0;
        if (have_prev && std::abs(rich - prev) <= rel_tol * std::abs(rich)) return rich;
        prev = rich;
        have_prev = true;
        h *= 0.5;
    }
    throw std::runtime_error("second_derivative: Richardson extrapolation did not converge");
}

struct DiskQuadrature {
    std::vector<double> r, wr, cphi, sphi;
    double wphi;

    DiskQuadrature(double radius, int nr, int nphi) {
        // Gauss-Legendre nodes on [0, radius] by Newton iteration.
        std::vector<double> x(nr), w(nr);
        for (int i = 0; i < nr; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (nr + 0.5));
            for (int k = 0; k < 100; ++k) {
                double p0 = 1.0, p1 = t;
                for (int j = 2; j <= nr; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = nr * (t * p1 - p0) / (t * t - 1.0);
                const double t1 = t - p1 / dp;
                if (std::abs(t1 - t) < 1e-15) { t = t1; break; }
                t = t1;
            }
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= nr; ++j) {
                const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = nr * (t * p1 - p0) / (t * t - 1.0);
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
        r.resize(nr);
        wr.resize(nr);
        for (int i = 0; i < nr; ++i) {
            r[i] = 0.5 * radius * (x[i] + 1.0);
            wr[i] = 0.5 * radius * w[i];
        }
        cphi.resize(nphi);
        sphi.resize(nphi);
        for (int k = 0; k < nphi; ++k) {
            const double phi = 2.0 * M_PI * k / nphi;
            cphi[k] = std::cos(phi);
            sphi[k] = std::sin(phi);
        }
        wphi = 2.0 * M_PI / nphi;
    }
};

// Field of a uniformly charged disk: B(r) = (sigma/4pi) int (r - r')/|r - r'|^3 dA'.
Eigen::Vector3d disk_field(const DiskQuadrature& quad, const Eigen::Vector3d& center,
                           const Eigen::Vector3d& e1, const Eigen::Vector3d& e2,
                           double sigma, const Eigen::Vector3d& r) {
    Eigen::Vector3d B = Eigen::Vector3d::Zero();
    for (size_t i = 0; i < quad.r.size(); ++i) {
        const double ri = quad.r[i];
        const double wi = quad.wr[i] * ri * quad.wphi;
        for (size_t k = 0; k < quad.cphi.size(); ++k) {
            const Eigen::Vector3d p = center + ri * quad.cphi[k] * e1 + ri * quad.sphi[k] * e2;
            const Eigen::Vector3d d = r - p;
            const double dist = d.norm();
            B += (wi / (dist * dist * dist)) * d;
        }
    }
    return (sigma / (4.0 * M_PI)) * B;
}

constexpr int kQuadRadial = 48;
constexpr int kQuadAngular = 64;

}  // namespace

Eigen::Vector3d single_magnet_field_quadrature(double radius, double z1, double z2,
                                               double mu0_Ms, const Eigen::Vector3d& r) {
    DiskQuadrature quad(radius, kQuadRadial, kQuadAngular);
    const Eigen::Vector3d e1(1, 0, 0), e2(0, 1, 0);
    // + charge on the north (top) face, - on the south (bottom) face.
    return disk_field(quad, {0, 0, z2}, e1, e2, +mu0_Ms, r)
         + disk_field(quad, {0, 0, z1}, e1, e2, -mu0_Ms, r);
}

Eigen::Vector3d magnet_pair_field(const DeviceGeometry& g, const Eigen::Vector3d& r, double tilt) {
    validate_geometry(g);
    const double d = 0.5 * g.gap, h = g.magnet_height;
    const double ct = std::cos(tilt), st = std::sin(tilt);
    Eigen::Matrix3d rot;
    rot << ct, 0, st, 0, 1, 0, -st, 0, ct;
    const Eigen::Vector3d axis = rot * Eigen::Vector3d(0, 0, 1);
    const Eigen::Vector3d e1 = rot * Eigen::Vector3d(1, 0, 0);
    const Eigen::Vector3d e2 = rot * Eigen::Vector3d(0, 1, 0);
    DiskQuadrature quad(g.magnet_radius, kQuadRadial, kQuadAngular);

    Eigen::Vector3d B = Eigen::Vector3d::Zero();
    for (const auto& [zlo, zhi] : {std::pair{d, d + h}, std::pair{-d - h, -d}}) {
        B += disk_field(quad, zhi * axis, e1, e2, +g.mu0_Ms, r);
        B += disk_field(quad, zlo * axis, e1, e2, -g.mu0_Ms, r);
    }
    return B;
}

double second_order_gradient(const DeviceGeometry& g) {
    validate_geometry(g);
    auto f = [&g](double z) { return axial_field(g, z); };
    return second_derivative(f, g.gap / 50.0, 1e-4);
}

double two_phonon_coupling(double z_zpf, double G) {
    return 0.5 * constants::gyro * z_zpf * z_zpf * G;
}

double thermal_occupation(double omega_m, double temperature) {
    if (omega_m <= 0 || temperature <= 0)
        throw std::invalid_argument("thermal_occupation: omega_m and T must be > 0");
    return 1.0 / std::expm1(constants::hbar * omega_m / (constants::k_B * temperature));
}

double q_to_gamma(double Q, double n_th, double omega_m) {
    if (Q <= 0) throw std::invalid_argument("q_to_gamma: Q must be > 0");
    return n_th * omega_m / Q;
}

double gamma_to_q(double gamma_m_eff, double n_th, double omega_m) {
    if (gamma_m_eff <= 0) throw std::invalid_argument("gamma_to_q: gamma_m_eff must be > 0");
    return n_th * omega_m / gamma_m_eff;
}

DeviceDerived derive_device(const DeviceGeometry& g) {
    const CantileverMode m = cantilever_mode(g);
    DeviceDerived d;
    d.omega_m = m.omega_m;
    d.mass = m.mass;
    d.z_zpf = m.z_zpf;
    d.B0 = axial_field(g, 0.0);
    d.G = second_order_gradient(g);
    d.g = two_phonon_coupling(m.z_zpf, d.G);
    d.n_th = thermal_occupation(m.omega_m, g.temperature);
    return d;
}

double misalignment_error(const DeviceGeometry& g, double theta) {
    validate_geometry(g);
    if (std::abs(theta) > 15.0 * M_PI / 180.0)
        throw std::invalid_argument("misalignment_error: |theta| must be <= 15 degrees");
    auto curvature = [&g](double tilt) {
        auto f = [&g, tilt](double z) {
            return magnet_pair_field(g, Eigen::Vector3d(0, 0, z), tilt).norm();
        };
        return second_derivative(f, g.gap / 50.0, 1e-4);
    };
    const double G0 = curvature(0.0);
    if (theta == 0.0) return 0.0;
    return (curvature(theta) - G0) / G0;
}

}  // namespace pbsim
