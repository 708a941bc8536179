// Minimal Fock-space operator algebra on the truncated mechanics (x) spin
// Hilbert space. Composite index convention: mechanics slow, spin fast,
// i.e. |n, s> -> n * spin_dim + s, matching kron(mechanical, spin).
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace pbsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Spin basis of the effective two-level system {|D>, |E>}.
inline constexpr int kSpinD = 0;  // dark (ground) dressed state
inline constexpr int kSpinE = 1;  // excited dressed state

struct HilbertSpace {
    int fock_dim = 15;  // mechanical truncation N
    int spin_dim = 2;

    int dim() const { return fock_dim * spin_dim; }
    int index(int n, int s) const { return n * spin_dim + s; }

    bool operator==(const HilbertSpace&) const = default;
};

// Throws std::invalid_argument unless fock_dim >= 2 and spin_dim == 2.
void validate_space(const HilbertSpace& space);

struct Operator {
    HilbertSpace space;
    Matrix mat;

    Operator adjoint() const { return {space, mat.adjoint()}; }
};

struct DensityMatrix {
    HilbertSpace space;
    Matrix mat;

    double trace() const { return mat.trace().real(); }
    double hermiticity_error() const { return (mat - mat.adjoint()).cwiseAbs().maxCoeff(); }
    // Smallest eigenvalue of the Hermitized matrix; negative values beyond
    // tolerance indicate a non-physical state.
    double min_eigenvalue() const;
};

// Arithmetic on same-space operators (throws on space mismatch).
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(Complex scalar, const Operator& a);
Operator operator*(double scalar, const Operator& a);

// Mechanical-mode annihilation: <n-1|a|n> = sqrt(n) on the Fock factor,
// identity on the spin factor.
Operator annihilation(const HilbertSpace& space);
Operator creation(const HilbertSpace& space);
Operator number_operator(const HilbertSpace& space);

// sigma_- = |D><E| on the spin factor, identity on mechanics.
Operator spin_lower(const HilbertSpace& space);
Operator spin_raise(const HilbertSpace& space);
// sigma_+ sigma_- = |E><E| (x) identity.
Operator spin_excited_projector(const HilbertSpace& space);

Operator identity(const HilbertSpace& space);

// Kronecker product of factor matrices, first factor slow.
Matrix kron(const Matrix& a, const Matrix& b);

// Composite operator from a mechanical factor (fock_dim x fock_dim) and a
// spin factor (spin_dim x spin_dim). Throws on dimension mismatch.
Operator tensor(const HilbertSpace& space, const Matrix& mech, const Matrix& spin);

// Pure basis state |n, s><n, s|.
DensityMatrix basis_density(const HilbertSpace& space, int n, int s);
DensityMatrix vacuum_state(const HilbertSpace& space);
Vector basis_ket(const HilbertSpace& space, int n, int s);

// tr(rho A); throws on space mismatch.
Complex expectation(const DensityMatrix& rho, const Operator& a);

// Label like "|3,D>" for the composite index, for report headers.
std::string basis_label(const HilbertSpace& space, int index);

}  // namespace pbsim
