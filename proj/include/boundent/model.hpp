// model.hpp — Geometry, bath and unit conventions for two atoms near a reflecting plane

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace boundent {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

// Distance of both atoms from the plate. "Unbounded" means there is no plate at all,
// which is kept distinct from any large finite value so the free-space limit is exact.
class BoundaryDistance {
public:
    static BoundaryDistance unbounded() { return BoundaryDistance(kInf); }

    static BoundaryDistance at(double z) {
        if (!(z > 0.0) || std::isinf(z))
            throw std::invalid_argument("boundary distance z must be finite and > 0");
        return BoundaryDistance(z);
    }

    bool is_unbounded() const { return std::isinf(z_); }

    double value() const {
        if (is_unbounded()) throw std::logic_error("value() on unbounded boundary distance");
        return z_;
    }

    // Raw storage; +inf when unbounded.
    double raw() const { return z_; }

    bool operator==(const BoundaryDistance&) const = default;

private:
    explicit BoundaryDistance(double z) : z_(z) {}
    double z_;
};

using Vec3 = std::array<double, 3>;

struct AtomPairGeometry {
    double omega;          // level spacing (natural units)
    double L;              // atom separation
    BoundaryDistance z;    // common distance to the plate
    Vec3 n{0.0, 0.0, 1.0}; // quantization axis

    AtomPairGeometry(double omega_, double L_, BoundaryDistance z_, Vec3 n_ = {0.0, 0.0, 1.0})
        : omega(omega_), L(L_), z(z_), n(n_) {
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw std::invalid_argument("omega must be finite and > 0");
        if (!(L >= 0.0) || !std::isfinite(L))
            throw std::invalid_argument("separation L must be finite and >= 0");
        const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (std::abs(norm - 1.0) > 1e-12)
            throw std::invalid_argument("quantization axis n must be a unit vector");
    }
};

struct ThermalBath {
    double beta; // 1/(kT); +inf at zero temperature

    explicit ThermalBath(double beta_) : beta(beta_) {
        if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0 (or +inf)");
    }

    static ThermalBath zero_temperature() { return ThermalBath(kInf); }
    bool is_zero_temperature() const { return std::isinf(beta); }
};

// CODATA exact/recommended values.
struct PhysicalConstants {
    static constexpr double hbar = 1.054571817e-34;       // J s
    static constexpr double k_boltzmann = 1.380649e-23;   // J/K
    static constexpr double c_light = 2.99792458e8;       // m/s
};

enum class ZOverL { finite, unbounded, undefined };

// The three numbers every ratio quantity depends on.
struct DimensionlessParams {
    double omega_L;
    double z_over_L;   // meaningful only when z_kind == finite
    ZOverL z_kind;
    double beta_omega; // +inf at zero temperature
};

inline DimensionlessParams dimensionless(const AtomPairGeometry& g, const ThermalBath& bath) {
    DimensionlessParams p{g.omega * g.L, std::numeric_limits<double>::quiet_NaN(), ZOverL::finite,
                          bath.beta * g.omega};
    if (g.z.is_unbounded())
        p.z_kind = ZOverL::unbounded;
    else if (g.L == 0.0)
        p.z_kind = ZOverL::undefined;
    else
        p.z_over_L = g.z.value() / g.L;
    return p;
}

// Laboratory parameters. z_m = +inf means no plate; T_K = 0 means zero temperature.
struct SiParameters {
    double omega_rad_per_s;
    double L_m;
    double z_m;
    double T_K;
};

struct NaturalParameters {
    AtomPairGeometry geometry;
    ThermalBath bath;
};

// Natural units with hbar = c = k_B = 1 and lengths kept in meters:
// omega -> omega/c [1/m], beta -> hbar c/(k_B T) [m].
inline NaturalParameters from_si(const SiParameters& si, Vec3 n = {0.0, 0.0, 1.0}) {
    if (!(si.omega_rad_per_s > 0.0)) throw std::invalid_argument("omega_rad_per_s must be > 0");
    if (!(si.L_m >= 0.0)) throw std::invalid_argument("L_m must be >= 0");
    if (!(si.z_m > 0.0)) throw std::invalid_argument("z_m must be > 0 (or +inf)");
    if (!(si.T_K >= 0.0)) throw std::invalid_argument("T_K must be >= 0");
    using C = PhysicalConstants;
    const double beta = si.T_K == 0.0 ? kInf : C::hbar * C::c_light / (C::k_boltzmann * si.T_K);
    const auto z = std::isinf(si.z_m) ? BoundaryDistance::unbounded() : BoundaryDistance::at(si.z_m);
    return {AtomPairGeometry(si.omega_rad_per_s / C::c_light, si.L_m, z, n), ThermalBath(beta)};
}

inline SiParameters to_si(const AtomPairGeometry& g, const ThermalBath& bath) {
    using C = PhysicalConstants;
    return {g.omega * C::c_light, g.L, g.z.raw(),
            bath.is_zero_temperature() ? 0.0 : C::hbar * C::c_light / (C::k_boltzmann * bath.beta)};
}

// Temperature in kelvin for a natural-unit inverse temperature measured in meters.
inline double kelvin_from_beta(double beta_m) {
    using C = PhysicalConstants;
    return std::isinf(beta_m) ? 0.0 : C::hbar * C::c_light / (C::k_boltzmann * beta_m);
}

inline double beta_from_kelvin(double T_K) {
    using C = PhysicalConstants;
    return T_K == 0.0 ? kInf : C::hbar * C::c_light / (C::k_boltzmann * T_K);
}

} // namespace boundent
