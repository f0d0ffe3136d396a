// dynamics.hpp — Dissipative two-atom evolution in Bloch components and the
// short-time entanglement-birth test

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "boundent/dopri5.hpp"
#include "boundent/model.hpp"
#include "boundent/spectral.hpp"
#include "boundent/states.hpp"

namespace boundent {

// Time derivative of the Bloch components under the dissipator alone (no effective
// Hamiltonian). tau is read from the current state.
inline BlochState lindblad_rhs(const BlochState& s, const KossakowskiSet& k, const Vec3& axis) {
    const Eigen::Vector3d n = to_eigen(axis);
    const Eigen::Matrix3d& r = s.rhoij;
    const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
    const double tau = r.trace();
    const Eigen::Vector3d rn = r * n;             // rho_ik n_k
    const Eigen::Vector3d rtn = r.transpose() * n; // n_k rho_ki

    BlochState d;
    d.rho0i = -4 * k.A1 * s.rho0i - 4 * k.B1 * n - 2 * k.B2 * tau * n + 2 * k.B2 * rn -
              2 * k.C1 * s.rho0i + 2 * k.C1 * n.dot(s.rho0i) * n;
    d.rhoi0 = -4 * k.A1 * s.rhoi0 - 4 * k.B1 * n - 2 * k.B2 * tau * n + 2 * k.B2 * rtn -
              2 * k.C1 * s.rhoi0 + 2 * k.C1 * n.dot(s.rhoi0) * n;

    const Eigen::Matrix3d nn = n * n.transpose();
    d.rhoij = -8 * k.A1 * r - 4 * k.A2 * r.transpose() + 4 * k.A2 * tau * I -
              4 * k.B1 * (n * s.rho0i.transpose() + s.rhoi0 * n.transpose()) -
              2 * k.B2 * (n * s.rhoi0.transpose() + s.rho0i * n.transpose()) +
              2 * k.B2 * n.dot(s.rhoi0 + s.rho0i) * I - 4 * k.C1 * r - 4 * k.C2 * r.transpose() +
              4 * k.C2 * (n * rn.transpose() + rtn * n.transpose() - tau * nn) +
              2 * k.C1 * (n * rtn.transpose() + rn * n.transpose()) +
              4 * k.C2 * (tau - n.dot(rn)) * I;
    return d;
}

struct Trajectory {
    std::vector<double> times;
    std::vector<BlochState> states;
    StepDiagnostics diagnostics;
    double max_tau_drift = 0.0; // max_t |tau(t) - tau(0)|

    const BlochState& final_state() const { return states.back(); }
};

inline Trajectory evolve(const BlochState& initial, const KossakowskiSet& k, const Vec3& n,
                         double t_end, double tol) {
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw std::invalid_argument("evolve: tEnd must be finite and > 0");
    if (!(tol >= 1e-12 && tol <= 1e-4)) throw std::invalid_argument("evolve: tol must lie in [1e-12, 1e-4]");

    auto rhs = [&](double, const BlochVector15& y) {
        return lindblad_rhs(BlochState::unpack(y), k, n).pack();
    };
    Trajectory traj;
    const double tau0 = initial.tau();
    auto record = [&](double t, const BlochVector15& y) {
        traj.times.push_back(t);
        traj.states.push_back(BlochState::unpack(y));
        traj.max_tau_drift = std::max(traj.max_tau_drift, std::abs(traj.states.back().tau() - tau0));
    };
    BlochVector15 y = initial.pack();
    AdaptiveOptions opt;
    opt.tol = tol;
    traj.diagnostics = integrate_dopri5(rhs, y, 0.0, t_end, opt, record);
    return traj;
}

// Final state only, without storing the path.
inline BlochState evolve_to(const BlochState& initial, const KossakowskiSet& k, const Vec3& n,
                            double t_end, double tol, StepDiagnostics* diag = nullptr) {
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw std::invalid_argument("evolve: tEnd must be finite and > 0");
    if (!(tol >= 1e-12 && tol <= 1e-4)) throw std::invalid_argument("evolve: tol must lie in [1e-12, 1e-4]");
    auto rhs = [&](double, const BlochVector15& y) {
        return lindblad_rhs(BlochState::unpack(y), k, n).pack();
    };
    BlochVector15 y = initial.pack();
    AdaptiveOptions opt;
    opt.tol = tol;
    const auto d = integrate_dopri5(rhs, y, 0.0, t_end, opt, [](double, const BlochVector15&) {});
    if (diag) *diag = d;
    return BlochState::unpack(y);
}

struct WitnessVectors {
    Eigen::Vector3cd u{1.0, std::complex<double>(0.0, -1.0), 0.0};
    Eigen::Vector3cd v{1.0, std::complex<double>(0.0, -1.0), 0.0};
};

// <u|C11|u> <v|C22^T|v> < |<u|Re C12|v>|^2
inline bool creation_condition(const KossakowskiSet& k, const WitnessVectors& w = {},
                               const Vec3& n = {0.0, 0.0, 1.0}) {
    if (w.u.norm() == 0.0 || w.v.norm() == 0.0)
        throw std::invalid_argument("creation_condition: witness vectors must be nonzero");
    const KossakowskiMatrix c11 = kossakowski_matrix(k, n, PairBlock::same);
    const KossakowskiMatrix c22 = c11;
    const KossakowskiMatrix c12 = kossakowski_matrix(k, n, PairBlock::cross);
    const Eigen::Matrix3cd re12 = c12.real().cast<std::complex<double>>();
    const double lhs = (w.u.adjoint() * c11 * w.u).value().real() *
                       (w.v.adjoint() * c22.transpose() * w.v).value().real();
    const double rhs = std::norm((w.u.adjoint() * re12 * w.v).value());
    return lhs < rhs;
}

// (A2/A1)^2 + (B1/A1)^2 - 1; positive when entanglement is born.
inline double creation_margin(const AtomPairGeometry& g, const ThermalBath& bath) {
    return ratio_A_squared(g) + ratio_B_squared(bath, g.omega) - 1.0;
}

inline bool creation_condition_closed(const AtomPairGeometry& g, const ThermalBath& bath) {
    return creation_margin(g, bath) > 0.0;
}

// Finite-difference slope of the partial-transpose minimum eigenvalue starting from
// |e><e| (x) |g><g|. Negative means entanglement appears immediately. dt <= 0 picks 1e-3/A1.
inline double birth_witness_slope(const KossakowskiSet& k, const Vec3& n, double dt = 0.0) {
    const bool idle = k.A1 == 0.0 && k.B1 == 0.0 && k.C1 == 0.0 && k.A2 == 0.0 && k.B2 == 0.0 &&
                      k.C2 == 0.0;
    if (idle) return 0.0;
    if (dt <= 0.0) {
        if (!(k.A1 > 0.0)) throw std::invalid_argument("birth_witness_slope: default dt needs A1 > 0");
        dt = 1e-3 / k.A1;
    }
    const BlochState start = BlochState::excited_ground();
    const BlochState later = evolve_to(start, k, n, dt, 1e-12);
    const double q0 = ppt_min_eigenvalue(bloch_to_matrix(start));
    const double q1 = ppt_min_eigenvalue(bloch_to_matrix(later));
    return (q1 - q0) / dt;
}

} // namespace boundent
