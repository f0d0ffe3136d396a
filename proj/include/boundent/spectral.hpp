// spectral.hpp — Thermal spectral densities with image-charge boundary terms and
// the Kossakowski coefficients they induce

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "boundent/model.hpp"

namespace boundent {

// sin(x)/x, Taylor branch below |x| < 1e-4.
inline double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

// 1 - sin(x)/x without cancellation near the origin.
inline double one_minus_sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1.0) {
        // sum_{k>=1} (-1)^{k+1} x^{2k} / (2k+1)!
        const double x2 = x * x;
        double term = x2 / 6.0;
        double sum = term;
        for (int k = 2; k < 14; ++k) {
            term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
            sum += term;
        }
        return sum;
    }
    return 1.0 - std::sin(x) / x;
}

// sinc(a) - sinc(sqrt(a^2 + 4 b^2)), the direct-minus-image combination that carries the
// boundary dependence of the cross correlations. Rewritten so that b -> 0 keeps full
// relative precision instead of subtracting two nearly equal sincs.
inline double image_difference(double a, double b) {
    a = std::abs(a);
    b = std::abs(b);
    if (a == 0.0) return one_minus_sinc(2.0 * b);
    const double r = b / a;
    const double q = 4.0 * r * r;
    const double s1 = q / (std::sqrt(1.0 + q) + 1.0); // sqrt(1+4r^2) - 1
    if (a * (1.0 + s1) <= 1.0) {
        // sum_k (-1)^(k+1) (c^2k - a^2k)/(2k+1)! with c = a(1+s1); each difference is formed
        // without cancellation as a^2k expm1(2k log1p(s1))
        const double l1p = std::log1p(s1);
        double sum = 0.0, a2k = 1.0, fact = 1.0;
        for (int k = 1; k <= 12; ++k) {
            a2k *= a * a;
            fact *= (2.0 * k) * (2.0 * k + 1.0);
            const double term = a2k * std::expm1(2.0 * k * l1p) / fact;
            sum += (k % 2 == 1) ? term : -term;
        }
        return sum;
    }
    const double d = a * s1;
    const double half = std::sin(0.5 * d);
    const double num = std::sin(a) * (s1 + 2.0 * half * half) - std::cos(a) * std::sin(d);
    return num / (a * (1.0 + s1));
}

// lambda / (1 - exp(-beta lambda)); 1/beta at lambda = 0, step form at beta = inf.
inline double planck_factor(double lambda, double beta) {
    if (std::isinf(beta)) return lambda > 0.0 ? lambda : 0.0;
    const double x = beta * lambda;
    if (std::abs(x) < 1e-8) return (1.0 + 0.5 * x) / beta;
    return lambda / -std::expm1(-x);
}

// Fourier transform of the same-atom correlation (diagonal element).
inline double spectral_same(double lambda, const ThermalBath& bath, const BoundaryDistance& z) {
    const double boundary = z.is_unbounded() ? 1.0 : one_minus_sinc(2.0 * z.value() * lambda);
    return planck_factor(lambda, bath.beta) * boundary / (2.0 * kPi);
}

// Fourier transform of the cross-atom correlation (diagonal element).
inline double spectral_cross(double lambda, const ThermalBath& bath, const BoundaryDistance& z,
                             double L) {
    if (!(L >= 0.0)) throw std::invalid_argument("separation L must be >= 0");
    const double shape =
        z.is_unbounded() ? sinc(L * lambda) : image_difference(L * lambda, z.value() * lambda);
    return planck_factor(lambda, bath.beta) * shape / (2.0 * kPi);
}

struct KossakowskiSet {
    double A1{0.0}, B1{0.0}, C1{0.0};
    double A2{0.0}, B2{0.0}, C2{0.0};

    // B1/A1, i.e. tanh(beta omega / 2); 0 when every coefficient vanishes.
    double R() const { return A1 == 0.0 ? 0.0 : B1 / A1; }
};

// coth(beta omega / 2), equal to 1 at zero temperature.
inline double thermal_enhancement(double beta_omega) {
    return std::isinf(beta_omega) ? 1.0 : 1.0 / std::tanh(0.5 * beta_omega);
}

inline KossakowskiSet kossakowski(const AtomPairGeometry& g, const ThermalBath& bath) {
    const double w = g.omega;
    const double scale = w / (4.0 * kPi);
    const double enh = thermal_enhancement(bath.beta * w);
    double same = 1.0;
    double cross = sinc(g.L * w);
    if (!g.z.is_unbounded()) {
        same = one_minus_sinc(2.0 * g.z.value() * w);
        cross = image_difference(g.L * w, g.z.value() * w);
    }
    KossakowskiSet k;
    k.B1 = scale * same;
    k.B2 = scale * cross;
    k.A1 = enh * k.B1;
    k.A2 = enh * k.B2;
    k.C1 = -k.A1;
    k.C2 = -k.A2;
    return k;
}

enum class PairBlock { same, cross };

using KossakowskiMatrix = Eigen::Matrix3cd;

// A delta_ij - i B eps_ijk n_k + C n_i n_j for the chosen block.
inline KossakowskiMatrix kossakowski_matrix(const KossakowskiSet& k, const Vec3& n, PairBlock pair) {
    const bool same = pair == PairBlock::same;
    const double A = same ? k.A1 : k.A2;
    const double B = same ? k.B1 : k.B2;
    const double C = same ? k.C1 : k.C2;
    const std::complex<double> I(0.0, 1.0);
    KossakowskiMatrix m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = (i == j ? A : 0.0) + C * n[i] * n[j];
    // eps_ijk n_k
    m(0, 1) += -I * B * n[2];
    m(1, 0) += I * B * n[2];
    m(1, 2) += -I * B * n[0];
    m(2, 1) += I * B * n[0];
    m(2, 0) += -I * B * n[1];
    m(0, 2) += I * B * n[1];
    return m;
}

// Leading and z^2 terms of (A2/A1)^2 for atoms hugging the plate (z << L).
struct NearBoundaryExpansion {
    double leading;   // z-independent term
    double quadratic; // coefficient of (z/L)^2

    double value(double z_over_L) const { return leading + quadratic * z_over_L * z_over_L; }
};

namespace detail {

// sin x - x cos x
inline double sin_minus_xcos(double x) {
    if (std::abs(x) < 1.0) {
        // sum_{k>=1} (-1)^{k+1} 2k x^{2k+1} / (2k+1)!
        const double x2 = x * x;
        double pow_over_fact = x * x2 / 6.0; // x^{2k+1}/(2k+1)!
        double sum = 2.0 * pow_over_fact;
        for (int k = 2; k < 14; ++k) {
            pow_over_fact *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
            sum += 2.0 * k * pow_over_fact;
        }
        return sum;
    }
    return std::sin(x) - x * std::cos(x);
}

// x (x^2 - 15) cos x + 3 (5 - 2x^2) sin x, which starts at x^7/105.
inline double quadratic_shape(double x) {
    if (std::abs(x) < 1.0) {
        static constexpr double c[] = {1.0 / 105.0,
                                       -1.0 / 1890.0,
                                       1.0 / 83160.0,
                                       -1.0 / 6486480.0,
                                       1.0 / 778377600.0,
                                       -1.0 / 132324192000.0,
                                       1.0 / 30169915776000.0,
                                       -1.0 / 8869955238144000.0,
                                       1.0 / 3264143527636992000.0,
                                       -1.0 / 1468864587436646400000.0};
        const double x2 = x * x;
        double p = 0.0;
        for (int i = 9; i >= 0; --i) p = p * x2 + c[i];
        return p * x2 * x2 * x2 * x;
    }
    return x * (x * x - 15.0) * std::cos(x) + 3.0 * (5.0 - 2.0 * x * x) * std::sin(x);
}

} // namespace detail

inline NearBoundaryExpansion ratio_A_near_boundary(double omega_L) {
    if (!(omega_L > 0.0)) throw std::invalid_argument("ratio_A_near_boundary: omegaL must be > 0");
    const double x = omega_L;
    const double x6 = std::pow(x, 6);
    const double s = detail::sin_minus_xcos(x);
    // 9 s^2 / x^6, with s ~ x^3/3 the ratio tends to 1
    const double lead = 9.0 * (s / (x * x * x)) * (s / (x * x * x));
    const double quad = 18.0 / 5.0 * (-s) * detail::quadratic_shape(x) / x6;
    return {lead, quad};
}

// Far-from-plate form: sinc^2(omega L) plus the first L/z correction.
inline double ratio_A_far(double omega_L, double z_over_L) {
    if (!(z_over_L >= 10.0))
        throw std::invalid_argument("ratio_A_far: asymptotic form requires z/L >= 10");
    if (!(omega_L > 0.0)) throw std::invalid_argument("ratio_A_far: omegaL must be > 0");
    const double x = omega_L;
    const double sx = std::sin(x);
    const double corr = sx / (x * x * x) *
                        (sx * std::sin(2.0 * x * z_over_L) -
                         x * std::sin(x * std::sqrt(1.0 + 4.0 * z_over_L * z_over_L)));
    const double s = sinc(x);
    return s * s + corr / z_over_L;
}

// Below this z/L the near-boundary expansion replaces the full quotient.
inline constexpr double kNearBoundaryCrossover = 1e-6;

// (A2/A1)^2 as a function of omega L and z/L; z_over_L = +inf for no plate.
inline double ratio_A_squared(double omega_L, double z_over_L) {
    if (omega_L == 0.0) return 1.0;
    if (std::isinf(z_over_L)) {
        const double s = sinc(omega_L);
        return s * s;
    }
    if (z_over_L < kNearBoundaryCrossover) return ratio_A_near_boundary(omega_L).value(z_over_L);
    const double num = image_difference(omega_L, omega_L * z_over_L);
    const double den = one_minus_sinc(2.0 * omega_L * z_over_L);
    return (num / den) * (num / den);
}

inline double ratio_A_squared(const AtomPairGeometry& g) {
    if (g.L == 0.0) return 1.0;
    const double zl = g.z.is_unbounded() ? kInf : g.z.value() / g.L;
    return ratio_A_squared(g.omega * g.L, zl);
}

// (B1/A1)^2 = tanh^2(beta omega / 2).
inline double ratio_B_squared(double beta_omega) {
    if (std::isinf(beta_omega)) return 1.0;
    const double t = std::tanh(0.5 * beta_omega);
    return t * t;
}

inline double ratio_B_squared(const ThermalBath& bath, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("ratio_B_squared: omega must be > 0");
    return ratio_B_squared(bath.beta * omega);
}

} // namespace boundent
