#include "pbsim/qcore.hpp"

#include <cmath>
#include <stdexcept>

namespace pbsim {

void validate_space(const HilbertSpace& space) {
    if (space.fock_dim < 2)
        throw std::invalid_argument("HilbertSpace: fock_dim must be >= 2 (two-phonon operators)");
    if (space.spin_dim != 2)
        throw std::invalid_argument("HilbertSpace: spin_dim must be 2");
}

namespace {

void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": operator space mismatch");
}

}  // namespace

double DensityMatrix::min_eigenvalue() const {
    Matrix h = 0.5 * (mat + mat.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Operator operator+(const Operator& a, const Operator& b) {
    require_same_space(a.space, b.space, "operator+");
    return {a.space, a.mat + b.mat};
}

Operator operator-(const Operator& a, const Operator& b) {
    require_same_space(a.space, b.space, "operator-");
    return {a.space, a.mat - b.mat};
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_space(a.space, b.space, "operator*");
    return {a.space, a.mat * b.mat};
}

Operator operator*(Complex scalar, const Operator& a) { return {a.space, scalar * a.mat}; }
Operator operator*(double scalar, const Operator& a) { return {a.space, scalar * a.mat}; }

Operator annihilation(const HilbertSpace& space) {
    validate_space(space);
    Matrix a = Matrix::Zero(space.fock_dim, space.fock_dim);
    for (int n = 1; n < space.fock_dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return tensor(space, a, Matrix::Identity(space.spin_dim, space.spin_dim));
}

Operator creation(const HilbertSpace& space) { return annihilation(space).adjoint(); }

Operator number_operator(const HilbertSpace& space) {
    Operator a = annihilation(space);
    return {space, a.mat.adjoint() * a.mat};
}

Operator spin_lower(const HilbertSpace& space) {
    validate_space(space);
    Matrix sm = Matrix::Zero(2, 2);
    sm(kSpinD, kSpinE) = 1.0;  // |D><E|
    return tensor(space, Matrix::Identity(space.fock_dim, space.fock_dim), sm);
}

Operator spin_raise(const HilbertSpace& space) { return spin_lower(space).adjoint(); }

Operator spin_excited_projector(const HilbertSpace& space) {
    Operator sm = spin_lower(space);
    return {space, sm.mat.adjoint() * sm.mat};
}

Operator identity(const HilbertSpace& space) {
    validate_space(space);
    return {space, Matrix::Identity(space.dim(), space.dim())};
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Operator tensor(const HilbertSpace& space, const Matrix& mech, const Matrix& spin) {
    validate_space(space);
    if (mech.rows() != space.fock_dim || mech.cols() != space.fock_dim)
        throw std::invalid_argument("tensor: mechanical factor dimension mismatch");
    if (spin.rows() != space.spin_dim || spin.cols() != space.spin_dim)
        throw std::invalid_argument("tensor: spin factor dimension mismatch");
    return {space, kron(mech, spin)};
}

DensityMatrix basis_density(const HilbertSpace& space, int n, int s) {
    validate_space(space);
    if (n < 0 || n >= space.fock_dim || s < 0 || s >= space.spin_dim)
        throw std::invalid_argument("basis_density: index out of range");
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    m(space.index(n, s), space.index(n, s)) = 1.0;
    return {space, m};
}

DensityMatrix vacuum_state(const HilbertSpace& space) { return basis_density(space, 0, kSpinD); }

Vector basis_ket(const HilbertSpace& space, int n, int s) {
    validate_space(space);
    Vector v = Vector::Zero(space.dim());
    v(space.index(n, s)) = 1.0;
    return v;
}

Complex expectation(const DensityMatrix& rho, const Operator& a) {
    require_same_space(rho.space, a.space, "expectation");
    return (rho.mat * a.mat).trace();
}

std::string basis_label(const HilbertSpace& space, int index) {
    int n = index / space.spin_dim;
    int s = index % space.spin_dim;
    return "|" + std::to_string(n) + (s == kSpinD ? ",D>" : ",E>");
}

}  // namespace pbsim
