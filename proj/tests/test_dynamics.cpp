#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lindblad_oracle.hpp"
#include "test_support.hpp"

using namespace boundent;
using boundent::testing::random_axis;
using boundent::testing::random_density;

namespace {

const Vec3 kAxis3{0.0, 0.0, 1.0};

KossakowskiSet coefficients(double omega_L, double z_over_L, double beta_omega) {
    const double z = omega_L * z_over_L;
    return kossakowski(AtomPairGeometry(1.0, omega_L, BoundaryDistance::at(z)), ThermalBath(beta_omega));
}

double max_abs(const BlochState& s) { return s.pack().cwiseAbs().maxCoeff(); }

} // namespace

TEST(LindbladRhs, MatchesGeneratorForm) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        // arbitrary A, B, C (not only C = -A) to exercise every term
        const KossakowskiSet k{std::abs(u(rng)) + 0.1, u(rng), u(rng), u(rng), u(rng), u(rng)};
        const Vec3 n = random_axis(rng);
        const DensityMatrix4 rho = random_density(rng);
        const BlochState expected = boundent::testing::bloch_of_derivative(boundent::testing::dissipator(rho, k, n));
        const BlochState got = lindblad_rhs(matrix_to_bloch(rho), k, n);
        EXPECT_LT((got.pack() - expected.pack()).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(LindbladRhs, VanishesAtEquilibrium) {
    const KossakowskiSet k = coefficients(2.027, 0.3, 1.5);
    EXPECT_LT(max_abs(lindblad_rhs(asymptotic_state(k, kAxis3), k, kAxis3)), 1e-12);
}

TEST(LindbladRhs, ZeroSeparationConservesTau) {
    const auto k = kossakowski(AtomPairGeometry(1.0, 0.0, BoundaryDistance::at(0.4)), ThermalBath(1.1));
    std::mt19937_64 rng(42);
    for (int i = 0; i < 50; ++i) {
        const BlochState s = matrix_to_bloch(random_density(rng));
        EXPECT_LT(std::abs(lindblad_rhs(s, k, random_axis(rng)).rhoij.trace()), 1e-14);
    }
}

TEST(LindbladRhs, ZeroCoefficientsGiveZero) {
    std::mt19937_64 rng(43);
    const BlochState s = matrix_to_bloch(random_density(rng));
    EXPECT_EQ(max_abs(lindblad_rhs(s, KossakowskiSet{}, kAxis3)), 0.0);
}

TEST(Evolve, EquilibriumIsStationary) {
    const KossakowskiSet k = coefficients(3.1, 0.8, 0.9);
    const BlochState eq = asymptotic_state(k, kAxis3);
    const Trajectory tr = evolve(eq, k, kAxis3, 20.0 / k.A1, 1e-10);
    for (const auto& s : tr.states) EXPECT_LT(bloch_distance(s, eq), 1e-9);
}

TEST(Evolve, ReachesClosedFormEquilibrium) {
    const KossakowskiSet k = coefficients(4.0, 0.7, 2.0);
    std::mt19937_64 rng(44);
    const BlochState start = matrix_to_bloch(random_density(rng));
    const BlochState end = evolve_to(start, k, kAxis3, 30.0 / k.A1, 1e-11);
    EXPECT_LT(bloch_distance(end, asymptotic_state(k, kAxis3)), 1e-7);
}

TEST(Evolve, MatchesMatrixExponential) {
    std::mt19937_64 rng(45);
    const KossakowskiSet k = coefficients(1.3, 0.4, 1.2);
    const Vec3 n = random_axis(rng);
    const DensityMatrix4 rho0 = random_density(rng);
    const double t = 3.0 / k.A1;
    const DensityMatrix4 exact = boundent::testing::propagate_exact(rho0, k, n, t);
    const BlochState got = evolve_to(matrix_to_bloch(rho0), k, n, t, 1e-12);
    EXPECT_LT((bloch_to_matrix(got) - exact).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Evolve, ToleranceRefinementConverges) {
    std::mt19937_64 rng(46);
    const KossakowskiSet k = coefficients(2.0, 0.5, 1.0);
    const DensityMatrix4 rho0 = random_density(rng);
    const double t = 5.0 / k.A1;
    const DensityMatrix4 exact = boundent::testing::propagate_exact(rho0, k, kAxis3, t);
    std::vector<double> errs;
    std::vector<std::size_t> steps;
    for (double tol : {1e-5, 1e-7, 1e-9}) {
        StepDiagnostics d;
        const BlochState s = evolve_to(matrix_to_bloch(rho0), k, kAxis3, t, tol, &d);
        errs.push_back((bloch_to_matrix(s) - exact).cwiseAbs().maxCoeff());
        steps.push_back(d.accepted);
    }
    EXPECT_LT(errs[1], errs[0]);
    EXPECT_LT(errs[2], errs[1]);
    // local error ~ h^5: each 100x tolerance cut costs about 100^(1/5) = 2.5x the steps
    for (int i = 0; i < 2; ++i) {
        const double growth = static_cast<double>(steps[i + 1]) / static_cast<double>(steps[i]);
        EXPECT_GT(growth, 1.6);
        EXPECT_LT(growth, 4.0);
    }
}

TEST(Evolve, ValidatesArguments) {
    const KossakowskiSet k = coefficients(2.0, 0.5, 1.0);
    const BlochState s = BlochState::excited_ground();
    EXPECT_THROW(evolve(s, k, kAxis3, 0.0, 1e-8), std::invalid_argument);
    EXPECT_THROW(evolve(s, k, kAxis3, 1.0, 1e-13), std::invalid_argument);
    EXPECT_THROW(evolve(s, k, kAxis3, 1.0, 1e-3), std::invalid_argument);
}

TEST(EvolveProperty, TraceHermiticityAndPositivity) {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> wl(0.1, 10.0), zl(0.05, 50.0), bw(0.1, 20.0);
    for (int i = 0; i < 10; ++i) {
        const KossakowskiSet k = coefficients(wl(rng), zl(rng), bw(rng));
        const Vec3 n = random_axis(rng);
        const Trajectory tr = evolve(matrix_to_bloch(random_density(rng, 1 + i % 4)), k, n, 5.0 / k.A1, 1e-10);
        for (const auto& s : tr.states) {
            const DensityMatrix4 m = bloch_to_matrix(s);
            EXPECT_LT(std::abs(m.trace() - 1.0), 1e-10);
            EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
            EXPECT_GE(min_eigenvalue(m), -1e-8);
        }
    }
}

TEST(EvolveProperty, ZeroSeparationConservesTau) {
    std::mt19937_64 rng(48);
    for (int i = 0; i < 5; ++i) {
        const auto k = kossakowski(AtomPairGeometry(1.0, 0.0, BoundaryDistance::at(0.2 + i)), ThermalBath(0.5 + i));
        const Trajectory tr = evolve(matrix_to_bloch(random_density(rng)), k, random_axis(rng), 10.0 / k.A1, 1e-10);
        EXPECT_LT(tr.max_tau_drift, 1e-10);
        EXPECT_LE(tr.max_tau_drift, 100 * 1e-10);
    }
}

TEST(EvolveProperty, FarPlateMatchesFreeSpace) {
    std::mt19937_64 rng(49);
    const double L = 2.5, beta = 1.7;
    const auto k_free = kossakowski(AtomPairGeometry(1.0, L, BoundaryDistance::unbounded()), ThermalBath(beta));
    const auto k_far = kossakowski(AtomPairGeometry(1.0, L, BoundaryDistance::at(1e6 * L)), ThermalBath(beta));
    const BlochState start = matrix_to_bloch(random_density(rng));
    const Trajectory a = evolve(start, k_free, kAxis3, 10.0 / k_free.A1, 1e-10);
    const BlochState b_end = evolve_to(start, k_far, kAxis3, 10.0 / k_free.A1, 1e-10);
    EXPECT_LT(bloch_distance(a.final_state(), b_end), 1e-5);
    for (std::size_t i = 0; i < a.times.size(); i += std::max<std::size_t>(1, a.times.size() / 10)) {
        if (a.times[i] == 0.0) continue;
        const BlochState bi = evolve_to(start, k_far, kAxis3, a.times[i], 1e-10);
        EXPECT_LT(bloch_distance(a.states[i], bi), 1e-5);
    }
}

TEST(CreationCondition, AgreesWithClosedForm) {
    std::mt19937_64 rng(50);
    std::uniform_real_distribution<double> wl(0.05, 12.0), lz(-3.0, 2.0), bw(0.05, 20.0);
    int agree = 0, trues = 0;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        const double x = wl(rng), r = std::pow(10.0, lz(rng)), b = bw(rng);
        const AtomPairGeometry g(1.0, x, BoundaryDistance::at(x * r));
        const ThermalBath bath(b);
        const bool generic = creation_condition(kossakowski(g, bath));
        const bool closed = creation_condition_closed(g, bath);
        agree += generic == closed || std::abs(creation_margin(g, bath)) < 1e-12;
        trues += closed;
    }
    EXPECT_EQ(agree, n);
    EXPECT_GT(trues, 50);
    EXPECT_LT(trues, n - 50);
}

TEST(CreationCondition, ZeroTemperatureAlwaysCreates) {
    for (double L : {0.3, 2.027, 9.0, 40.0})
        for (double z : {1e-3, 0.5, 7.0}) {
            const AtomPairGeometry g(1.0, L, BoundaryDistance::at(z));
            EXPECT_TRUE(creation_condition(kossakowski(g, ThermalBath::zero_temperature())));
            EXPECT_TRUE(creation_condition_closed(g, ThermalBath::zero_temperature()));
        }
}

TEST(CreationCondition, ZeroSeparationAlwaysCreates) {
    for (double beta : {0.05, 1.0, 30.0}) {
        const AtomPairGeometry g(1.0, 0.0, BoundaryDistance::at(0.6));
        EXPECT_TRUE(creation_condition(kossakowski(g, ThermalBath(beta))));
        EXPECT_TRUE(creation_condition_closed(g, ThermalBath(beta)));
    }
}

TEST(CreationCondition, HydrogenTemperatures) {
    auto created = [](double z_m, double T) {
        const auto p = from_si({1e14, 6.08e-6, z_m, T});
        return creation_condition_closed(p.geometry, p.bath);
    };
    // thresholds quoted as 262.663 K (no plate) and 379.731 K (plate at z/L << 1), to 1%
    EXPECT_TRUE(created(kInf, 0.99 * 262.663));
    EXPECT_FALSE(created(kInf, 1.01 * 262.663));
    EXPECT_TRUE(created(6.08e-10, 300.0));
    EXPECT_TRUE(created(6.08e-10, 0.99 * 379.731));
    EXPECT_FALSE(created(6.08e-10, 379.731 + 0.01));
}

TEST(BirthWitness, SignFollowsCondition) {
    const KossakowskiSet yes = coefficients(2.027, 0.01, 4.0);
    const KossakowskiSet no = coefficients(6.0, 2.0, 0.5);
    ASSERT_TRUE(creation_condition(yes));
    ASSERT_FALSE(creation_condition(no));
    EXPECT_LT(birth_witness_slope(yes, kAxis3), 0.0);
    EXPECT_GE(birth_witness_slope(no, kAxis3), 0.0);
}

TEST(BirthWitness, IdleEnvironment) { EXPECT_EQ(birth_witness_slope(KossakowskiSet{}, kAxis3), 0.0); }

TEST(BirthWitness, FirstOrderSlopeMatchesExactPropagation) {
    const KossakowskiSet k = coefficients(1.5, 0.2, 3.0);
    const double dt = 1e-3 / k.A1;
    const DensityMatrix4 r0 = bloch_to_matrix(BlochState::excited_ground());
    const DensityMatrix4 r1 = boundent::testing::propagate_exact(r0, k, kAxis3, dt);
    const double expected = (ppt_min_eigenvalue(r1) - ppt_min_eigenvalue(r0)) / dt;
    EXPECT_NEAR(birth_witness_slope(k, kAxis3), expected, 1e-8);
}
