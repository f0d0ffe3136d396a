// states.hpp — Two-qubit density matrices: Bloch form, partial transpose, PPT, concurrence
//
// Basis ordering is |e,e>, |e,g>, |g,e>, |g,g> with sigma_3|e> = +|e>; the first tensor
// factor is atom 1.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "boundent/model.hpp"

namespace boundent {

using DensityMatrix4 = Eigen::Matrix4cd;
using BlochVector15 = Eigen::Matrix<double, 15, 1>;

class InvalidStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BlochState {
    Eigen::Vector3d rho0i = Eigen::Vector3d::Zero(); // sigma_0 (x) sigma_i
    Eigen::Vector3d rhoi0 = Eigen::Vector3d::Zero(); // sigma_i (x) sigma_0
    Eigen::Matrix3d rhoij = Eigen::Matrix3d::Zero(); // sigma_i (x) sigma_j

    double tau() const { return rhoij.trace(); }

    // Packed as rho0i, rhoi0, then rhoij row-major.
    BlochVector15 pack() const {
        BlochVector15 v;
        v.segment<3>(0) = rho0i;
        v.segment<3>(3) = rhoi0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) v(6 + 3 * i + j) = rhoij(i, j);
        return v;
    }

    static BlochState unpack(const BlochVector15& v) {
        BlochState s;
        s.rho0i = v.segment<3>(0);
        s.rhoi0 = v.segment<3>(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s.rhoij(i, j) = v(6 + 3 * i + j);
        return s;
    }

    // |e><e| (x) |g><g|, the separable starting state used for the birth test.
    static BlochState excited_ground() {
        BlochState s;
        s.rhoi0 = Eigen::Vector3d(0.0, 0.0, 1.0);
        s.rho0i = Eigen::Vector3d(0.0, 0.0, -1.0);
        s.rhoij(2, 2) = -1.0;
        return s;
    }
};

inline Eigen::Vector3d to_eigen(const Vec3& v) { return {v[0], v[1], v[2]}; }

namespace pauli {

inline const std::array<Eigen::Matrix2cd, 4>& all() {
    static const std::array<Eigen::Matrix2cd, 4> s = [] {
        const std::complex<double> I(0.0, 1.0);
        std::array<Eigen::Matrix2cd, 4> p;
        p[0] << 1, 0, 0, 1;
        p[1] << 0, 1, 1, 0;
        p[2] << 0, -I, I, 0;
        p[3] << 1, 0, 0, -1;
        return p;
    }();
    return s;
}

inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

// sigma_a (x) sigma_b with a, b in 0..3.
inline const Eigen::Matrix4cd& pair(int a, int b) {
    static const std::array<Eigen::Matrix4cd, 16> table = [] {
        std::array<Eigen::Matrix4cd, 16> t;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) t[4 * i + j] = kron(all()[i], all()[j]);
        return t;
    }();
    return table[4 * a + b];
}

} // namespace pauli

inline DensityMatrix4 bloch_to_matrix(const BlochState& s) {
    DensityMatrix4 m = pauli::pair(0, 0);
    for (int i = 0; i < 3; ++i) {
        m += s.rho0i(i) * pauli::pair(0, i + 1);
        m += s.rhoi0(i) * pauli::pair(i + 1, 0);
        for (int j = 0; j < 3; ++j) m += s.rhoij(i, j) * pauli::pair(i + 1, j + 1);
    }
    return 0.25 * m;
}

inline void require_density_like(const DensityMatrix4& rho, double tol = 1e-10) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw InvalidStateError("density matrix is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > tol) throw InvalidStateError("density matrix trace != 1");
}

inline BlochState matrix_to_bloch(const DensityMatrix4& rho) {
    require_density_like(rho);
    auto coeff = [&](int a, int b) { return (rho * pauli::pair(a, b)).trace().real(); };
    BlochState s;
    for (int i = 0; i < 3; ++i) {
        s.rho0i(i) = coeff(0, i + 1);
        s.rhoi0(i) = coeff(i + 1, 0);
        for (int j = 0; j < 3; ++j) s.rhoij(i, j) = coeff(i + 1, j + 1);
    }
    return s;
}

// Smallest eigenvalue of the Hermitian part.
inline double min_eigenvalue(const DensityMatrix4& m) {
    const Eigen::Matrix4cd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Transpose on the second tensor factor: <i k|rho^T_B|j l> = <i l|rho|j k>.
inline DensityMatrix4 partial_transpose(const DensityMatrix4& rho) {
    DensityMatrix4 out;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = rho(2 * i + l, 2 * j + k);
    return out;
}

// Negative iff the state is entangled (Peres-Horodecki is exact for two qubits).
inline double ppt_min_eigenvalue(const DensityMatrix4& rho) {
    return min_eigenvalue(partial_transpose(rho));
}

// Wootters concurrence. The lambdas (square roots of the spectrum of rho * rho_tilde) are
// the singular values of T = sqrt(rho) (sigma_2 x sigma_2) sqrt(rho)^*, since
// T T^dagger = sqrt(rho) rho_tilde sqrt(rho). Taking them by SVD keeps the small ones
// accurate for nearly pure states, where square-rooting eigenvalues would not.
inline double concurrence(const DensityMatrix4& rho) {
    constexpr double kNegTol = 1e-10;
    const Eigen::Matrix4cd h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    Eigen::Vector4d ev = es.eigenvalues();
    if (ev(0) < -kNegTol)
        throw InvalidStateError("concurrence: state has eigenvalue " + std::to_string(ev(0)));
    for (int i = 0; i < 4; ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
    const Eigen::Matrix4cd root = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();

    const Eigen::Matrix4cd t = root * pauli::pair(2, 2) * root.conjugate();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(t);
    const Eigen::Vector4d lam = svd.singularValues(); // decreasing
    return std::max(lam(0) - lam(1) - lam(2) - lam(3), 0.0);
}

inline double concurrence(const BlochState& s) { return concurrence(bloch_to_matrix(s)); }

} // namespace boundent
