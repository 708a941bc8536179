// Physical-parameter derivation for the cantilever + nanomagnet device:
// fundamental mode, zero-point motion, on-axis field of the coaxial magnet
// pair, second-order gradient, two-phonon coupling rate, thermal occupation,
// and the Q <-> gamma_m_eff conversion.
#pragma once

#include <Eigen/Dense>

namespace pbsim {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_B = 1.380649e-23;      // J/K
// mu_B g_e as an angular frequency per tesla (g_e ~ 2, mu_B/h = 14 GHz/T).
inline constexpr double gyro = 2.0 * 3.14159265358979323846 * 28.0e9;  // rad/(s T)
}  // namespace constants

struct DeviceGeometry {
    // Cantilever dimensions (m).
    double length = 4e-6;
    double width = 0.1e-6;
    double thickness = 0.02e-6;
    // Cylindrical magnet pair (m), coaxial with z, symmetric about the NV.
    double magnet_radius = 15e-9;
    double magnet_height = 40e-9;
    double gap = 80e-9;  // face-to-face separation D_z
    double mu0_Ms = 3.7;              // saturation field (T)
    double youngs_modulus = 1.22e12;  // Pa
    double density = 3.52e3;          // kg/m^3
    double temperature = 0.01;        // K
};

void validate_geometry(const DeviceGeometry& g);

struct CantileverMode {
    double omega_m = 0.0;  // rad/s
    double mass = 0.0;     // kg
    double z_zpf = 0.0;    // m
};

// omega_m = 3.516 (t/l^2) sqrt(E/12 rho), M = rho l w t / 4,
// z_zpf = sqrt(hbar / (2 M omega_m)).
CantileverMode cantilever_mode(const DeviceGeometry& g);

// Exact on-axis field of the two coaxial magnets (both magnetized +z).
// Rejects evaluation inside the magnet material.
double axial_field(const DeviceGeometry& g, double z);

// d^2 B_z / dz^2 at the NV site by Richardson-extrapolated central
// differences of axial_field; successive estimates must agree to 1e-4.
double second_order_gradient(const DeviceGeometry& g);

// g = (1/2) mu_B g_e z_zpf^2 G, returned as angular frequency (rad/s).
double two_phonon_coupling(double z_zpf, double G);

// Bose-Einstein occupation.
double thermal_occupation(double omega_m, double temperature);

// gamma_m_eff = n_th omega_m / Q and the inverse.
double q_to_gamma(double Q, double n_th, double omega_m);
double gamma_to_q(double gamma_m_eff, double n_th, double omega_m);

struct DeviceDerived {
    double omega_m = 0.0, mass = 0.0, z_zpf = 0.0;
    double B0 = 0.0;   // field at the NV site (T)
    double G = 0.0;    // second-order gradient (T/m^2)
    double g = 0.0;    // two-phonon coupling (rad/s)
    double n_th = 0.0;
};

DeviceDerived derive_device(const DeviceGeometry& g);

// Closed-form on-axis B_z of one cylinder magnetized +z with faces at z1 < z2.
double single_magnet_axial_closed(double radius, double z1, double z2, double mu0_Ms, double z);

// The same magnet evaluated by surface-charge quadrature at an arbitrary
// point (used as the independent oracle for the closed form and as the
// kernel of the misalignment estimate).
Eigen::Vector3d single_magnet_field_quadrature(double radius, double z1, double z2,
                                               double mu0_Ms, const Eigen::Vector3d& r);

// Field of the magnet pair rigidly tilted by `tilt` (radians, about the y
// axis through the NV site), by quadrature over the rotated end faces.
Eigen::Vector3d magnet_pair_field(const DeviceGeometry& g, const Eigen::Vector3d& r, double tilt);

// Relative coupling error delta_g = (G_theta - G_0)/G_0 for a rigid pair
// tilt. G_theta is the curvature along the lab z axis of the field magnitude
// (the Zeeman-relevant scalar for a spin quantized along the strong local
// field). |theta| <= 15 degrees.
double misalignment_error(const DeviceGeometry& g, double theta);

}  // namespace pbsim
