// equilibrium.hpp — Late-time states of the dissipative dynamics and their entanglement

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "boundent/dynamics.hpp"
#include "boundent/model.hpp"
#include "boundent/spectral.hpp"
#include "boundent/states.hpp"

namespace boundent {

// Raised when the finite-separation formulas are asked to handle coincident atoms
// (every expression degenerates to 0/0) or when the zero-separation branch lacks tau.
class BranchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Denominator 2A1^3 - A1^2 A2 - A2 B1 B2 + A1 (B2^2 - A2^2).
inline double equilibrium_denominator(const KossakowskiSet& k) {
    return 2 * k.A1 * k.A1 * k.A1 - k.A1 * k.A1 * k.A2 - k.A2 * k.B1 * k.B2 +
           k.A1 * (k.B2 * k.B2 - k.A2 * k.A2);
}

// Fixed point for separated atoms, evaluated term by term from the closed-form solution.
inline BlochState asymptotic_state_verbatim(const KossakowskiSet& k, const Vec3& axis) {
    if (k.A1 == k.A2 && k.B1 == k.B2)
        throw BranchError("asymptotic_state: coincident atoms (A1 == A2); use the zero-separation branch");
    const double den = equilibrium_denominator(k);
    if (den == 0.0 || !std::isfinite(den))
        throw BranchError("asymptotic_state: vanishing denominator");
    const Eigen::Vector3d n = to_eigen(axis);
    BlochState s;
    s.rho0i = -(k.A1 - k.A2) * k.B1 * (2 * k.A1 + k.A2) / den * n;
    s.rhoi0 = s.rho0i;
    s.rhoij = (k.A1 - k.A2) * k.B1 * (2 * k.B1 + k.B2) / den * (n * n.transpose());
    return s;
}

// tau from the closed-form solution (equals trace of rhoij of the verbatim state).
inline double asymptotic_tau(const KossakowskiSet& k) {
    return (2 * k.A1 + k.A2) * k.B1 * (k.B1 - k.B2) / equilibrium_denominator(k);
}

// Same state written through R = B1/A1: both atoms polarized along -R n.
inline BlochState asymptotic_state_simplified(double R, const Vec3& axis) {
    const Eigen::Vector3d n = to_eigen(axis);
    BlochState s;
    s.rho0i = -R * n;
    s.rhoi0 = -R * n;
    s.rhoij = R * R * (n * n.transpose());
    return s;
}

inline double bloch_distance(const BlochState& a, const BlochState& b) {
    return (a.pack() - b.pack()).cwiseAbs().maxCoeff();
}

inline constexpr double kFormulaAgreementTol = 1e-10;

// Verbatim closed form, cross-checked against the simplified product form. A mismatch
// beyond kFormulaAgreementTol is reported through `warnings` when given, else thrown.
inline BlochState asymptotic_state(const KossakowskiSet& k, const Vec3& n,
                                   std::vector<std::string>* warnings = nullptr) {
    BlochState verbatim = asymptotic_state_verbatim(k, n);
    const double gap = bloch_distance(verbatim, asymptotic_state_simplified(k.R(), n));
    if (gap > kFormulaAgreementTol) {
        const std::string msg = "asymptotic_state: closed form and product form differ by " + std::to_string(gap);
        if (!warnings) throw std::runtime_error(msg);
        warnings->push_back(msg);
    }
    return verbatim;
}

inline void require_zero_sep_domain(double R, double tau) {
    if (!(R >= 0.0 && R <= 1.0)) throw std::invalid_argument("R must lie in [0, 1]");
    if (!(tau >= -3.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [-3, 1]");
}

// Coincident atoms: tau is conserved and labels a whole family of fixed points.
inline BlochState asymptotic_state_zero_sep(double R, double tau, const Vec3& axis) {
    require_zero_sep_domain(R, tau);
    const Eigen::Vector3d n = to_eigen(axis);
    const double R2 = R * R;
    const double den = 3.0 + R2;
    BlochState s;
    s.rho0i = -R * (tau + 3.0) / den * n;
    s.rhoi0 = s.rho0i;
    s.rhoij = ((tau - R2) * Eigen::Matrix3d::Identity() + R2 * (tau + 3.0) * (n * n.transpose())) / den;
    return s;
}

inline double equilibrium_concurrence_zero_sep(double R, double tau) {
    require_zero_sep_domain(R, tau);
    const double R2 = R * R;
    const double c = (3.0 - R2) / (2.0 * (3.0 + R2)) * ((5.0 * R2 - 3.0) / (3.0 - R2) - tau);
    return std::max(c, 0.0);
}

// Entanglement survives to late times iff tau < (5R^2 - 3)/(3 - R^2).
inline bool persistence_condition(double R, double tau) {
    require_zero_sep_domain(R, tau);
    return tau < (5.0 * R * R - 3.0) / (3.0 - R * R);
}

// B1/A1 evaluated at each plate distance must coincide: the boundary factor cancels.
inline bool boundary_independence_check(const ThermalBath& bath, double omega,
                                        const std::vector<BoundaryDistance>& z_samples,
                                        std::vector<double>* ratios = nullptr) {
    std::vector<BoundaryDistance> distinct;
    for (const auto& z : z_samples)
        if (std::find(distinct.begin(), distinct.end(), z) == distinct.end()) distinct.push_back(z);
    const bool has_free = std::any_of(distinct.begin(), distinct.end(),
                                      [](const BoundaryDistance& z) { return z.is_unbounded(); });
    if (distinct.size() < 2 || !has_free)
        throw std::invalid_argument(
            "boundary_independence_check: need >= 2 distinct z samples including unbounded");
    std::vector<double> r;
    for (const auto& z : distinct) r.push_back(kossakowski(AtomPairGeometry(omega, 0.0, z), bath).R());
    if (ratios) *ratios = r;
    for (double x : r)
        if (std::abs(x - r.front()) > 1e-12 * std::max(1.0, std::abs(r.front()))) return false;
    return true;
}

enum class EquilibriumBranch { finite_separation, zero_separation };

struct EquilibriumReport {
    BlochState state;
    double concurrence = 0.0;
    bool separable = true;
    EquilibriumBranch branch = EquilibriumBranch::finite_separation;
    double tau = 0.0;
    std::vector<std::string> warnings;
};

// Separations below this (in units of 1/omega) are treated as coincident atoms.
inline constexpr double kZeroSeparationThreshold = 1e-9;

// Dispatches on the geometry. tau0 (the conserved tau of the initial state) is required
// when the atoms coincide.
inline EquilibriumReport equilibrium(const AtomPairGeometry& g, const ThermalBath& bath,
                                     std::optional<double> tau0 = std::nullopt) {
    EquilibriumReport rep;
    const KossakowskiSet k = kossakowski(g, bath);
    const bool coincident = g.omega * g.L < kZeroSeparationThreshold;
    if (coincident) {
        if (g.L != 0.0)
            rep.warnings.push_back("separation below 1e-9/omega treated as zero separation");
        if (!tau0) throw BranchError("zero-separation equilibrium needs the initial tau");
        rep.branch = EquilibriumBranch::zero_separation;
        rep.tau = *tau0;
        rep.state = asymptotic_state_zero_sep(k.R(), *tau0, g.n);
    } else {
        rep.branch = EquilibriumBranch::finite_separation;
        rep.state = asymptotic_state(k, g.n, &rep.warnings);
        rep.tau = rep.state.tau();
    }
    rep.concurrence = concurrence(rep.state);
    rep.separable = rep.concurrence < 1e-12;
    return rep;
}

} // namespace boundent
