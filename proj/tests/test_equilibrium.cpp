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

AtomPairGeometry geom(double omega_L, double z_over_L) {
    return AtomPairGeometry(1.0, omega_L, BoundaryDistance::at(omega_L * z_over_L));
}

} // namespace

TEST(AsymptoticState, ClosedFormMatchesProductForm) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> wl(0.05, 20.0), lz(-3.0, 2.0), bw(0.01, 30.0);
    for (int i = 0; i < 1000; ++i) {
        const KossakowskiSet k = kossakowski(geom(wl(rng), std::pow(10.0, lz(rng))), ThermalBath(bw(rng)));
        const Vec3 n = random_axis(rng);
        const BlochState a = asymptotic_state_verbatim(k, n);
        EXPECT_LT(bloch_distance(a, asymptotic_state_simplified(k.R(), n)), 1e-10);
        EXPECT_NEAR(asymptotic_tau(k), a.tau(), 1e-12);
        EXPECT_NEAR(a.tau(), k.R() * k.R(), 1e-10);
    }
}

TEST(AsymptoticState, IsSeparableProductState) {
    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> wl(0.05, 20.0), zl(0.01, 10.0), bw(0.01, 30.0);
    for (int i = 0; i < 500; ++i) {
        const auto rep = equilibrium(geom(wl(rng), zl(rng)), ThermalBath(bw(rng)));
        EXPECT_EQ(rep.branch, EquilibriumBranch::finite_separation);
        EXPECT_LT(rep.concurrence, 1e-12);
        EXPECT_TRUE(rep.separable);
        EXPECT_TRUE(rep.warnings.empty());
        EXPECT_GE(ppt_min_eigenvalue(bloch_to_matrix(rep.state)), -1e-12);
    }
}

TEST(AsymptoticState, ZeroTemperatureIsGroundState) {
    const auto rep = equilibrium(geom(2.027, 0.5), ThermalBath::zero_temperature());
    const DensityMatrix4 m = bloch_to_matrix(rep.state);
    EXPECT_NEAR(m(3, 3).real(), 1.0, 1e-14); // |g,g>
    EXPECT_NEAR((m * m).trace().real(), 1.0, 1e-14);
}

TEST(AsymptoticState, HighTemperatureIsMaximallyMixed) {
    // R = tanh(beta omega / 2) ~ 5e-13 at beta omega = 1e-12
    const auto rep = equilibrium(geom(2.027, 0.5), ThermalBath(1e-12));
    EXPECT_LT(rep.state.pack().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(AsymptoticState, IsFixedPointOfGenerator) {
    std::mt19937_64 rng(63);
    for (int i = 0; i < 100; ++i) {
        const KossakowskiSet k = kossakowski(geom(0.3 + i * 0.1, 0.05 + 0.02 * i), ThermalBath(0.1 + 0.05 * i));
        const Vec3 n = random_axis(rng);
        const BlochState s = asymptotic_state(k, n);
        const DensityMatrix4 d = boundent::testing::dissipator(bloch_to_matrix(s), k, n);
        EXPECT_LT(d.cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(AsymptoticState, CoincidentAtomsRaiseBranchError) {
    const KossakowskiSet k = kossakowski(AtomPairGeometry(1.0, 0.0, BoundaryDistance::at(1.0)), ThermalBath(1.0));
    EXPECT_THROW(asymptotic_state_verbatim(k, kAxis3), BranchError);
    EXPECT_THROW(equilibrium(AtomPairGeometry(1.0, 0.0, BoundaryDistance::at(1.0)), ThermalBath(1.0)), BranchError);
}

TEST(AsymptoticState, FormulaMismatchIsReported) {
    // inconsistent coefficients: B1/A1 differs from the closed-form fixed point
    const KossakowskiSet k{1.0, 0.5, -1.0, 0.3, 0.1, -0.3};
    EXPECT_THROW(asymptotic_state(k, kAxis3), std::runtime_error);
    std::vector<std::string> w;
    asymptotic_state(k, kAxis3, &w);
    EXPECT_EQ(w.size(), 1u);
}

TEST(ZeroSeparation, StateIsNormalizedAndKeepsTau) {
    for (double R : {0.0, 0.3, 0.7, 1.0})
        for (double tau : {-3.0, -1.0, 0.0, 0.5, 1.0}) {
            const BlochState s = asymptotic_state_zero_sep(R, tau, kAxis3);
            EXPECT_NEAR(s.tau(), tau, 1e-14);
            const DensityMatrix4 m = bloch_to_matrix(s);
            EXPECT_NEAR(m.trace().real(), 1.0, 1e-15);
            EXPECT_GE(min_eigenvalue(m), -1e-12) << R << " " << tau;
        }
}

TEST(ZeroSeparation, GroundStateLimitFromExcitedGround) {
    // R = 1, tau = -1: half singlet-like |s>, half |g,g>
    const BlochState s = asymptotic_state_zero_sep(1.0, -1.0, kAxis3);
    const DensityMatrix4 m = bloch_to_matrix(s);
    EXPECT_NEAR(m(3, 3).real(), 0.5, 1e-15);
    EXPECT_NEAR(m(1, 1).real(), 0.25, 1e-15);
    EXPECT_NEAR(m(2, 2).real(), 0.25, 1e-15);
    EXPECT_NEAR(m(1, 2).real(), -0.25, 1e-15);
    EXPECT_NEAR(concurrence(s), 0.5, 1e-12);
    EXPECT_NEAR(equilibrium_concurrence_zero_sep(1.0, -1.0), 0.5, 1e-15);
}

TEST(ZeroSeparation, IsFixedPointOfGenerator) {
    std::mt19937_64 rng(64);
    for (int i = 0; i < 50; ++i) {
        const double beta = 0.1 + 0.2 * i;
        const auto k = kossakowski(AtomPairGeometry(1.0, 0.0, BoundaryDistance::at(0.5)), ThermalBath(beta));
        const Vec3 n = random_axis(rng);
        const double tau = -3.0 + 4.0 * (i + 0.5) / 50.0;
        const BlochState s = asymptotic_state_zero_sep(k.R(), tau, n);
        EXPECT_LT(boundent::testing::dissipator(bloch_to_matrix(s), k, n).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(ZeroSeparation, ConcurrenceFormulaMatchesNumeric) {
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 40; ++j) {
            const double R = i / 20.0, tau = -3.0 + 4.0 * j / 40.0;
            const BlochState s = asymptotic_state_zero_sep(R, tau, kAxis3);
            EXPECT_NEAR(equilibrium_concurrence_zero_sep(R, tau), concurrence(s), 1e-10) << R << " " << tau;
            EXPECT_EQ(persistence_condition(R, tau), equilibrium_concurrence_zero_sep(R, tau) > 0.0)
                << R << " " << tau;
        }
}

TEST(ZeroSeparation, InfiniteTemperatureKeepsOnlyTau) {
    const BlochState s = asymptotic_state_zero_sep(0.0, -3.0, kAxis3);
    EXPECT_NEAR(concurrence(s), 1.0, 1e-12); // singlet is a dark state
    EXPECT_TRUE(persistence_condition(0.0, -3.0));
    EXPECT_FALSE(persistence_condition(0.0, -1.0));
}

TEST(ZeroSeparation, DomainValidation) {
    EXPECT_THROW(asymptotic_state_zero_sep(1.2, 0.0, kAxis3), std::invalid_argument);
    EXPECT_THROW(asymptotic_state_zero_sep(0.5, 1.5, kAxis3), std::invalid_argument);
    EXPECT_THROW(equilibrium_concurrence_zero_sep(0.5, -3.5), std::invalid_argument);
}

TEST(ZeroSeparation, DispatchUsesTau) {
    const AtomPairGeometry g(1.0, 0.0, BoundaryDistance::unbounded());
    const auto rep = equilibrium(g, ThermalBath::zero_temperature(), -1.0);
    EXPECT_EQ(rep.branch, EquilibriumBranch::zero_separation);
    EXPECT_NEAR(rep.concurrence, 0.5, 1e-12);
    EXPECT_FALSE(rep.separable);
    const auto tiny = equilibrium(AtomPairGeometry(1.0, 1e-12, BoundaryDistance::unbounded()),
                                  ThermalBath::zero_temperature(), -1.0);
    EXPECT_EQ(tiny.branch, EquilibriumBranch::zero_separation);
    EXPECT_EQ(tiny.warnings.size(), 1u);
}

TEST(BoundaryIndependence, RatioIgnoresPlate) {
    std::vector<double> ratios;
    const std::vector<BoundaryDistance> zs{BoundaryDistance::unbounded(), BoundaryDistance::at(1e-3),
                                           BoundaryDistance::at(0.7), BoundaryDistance::at(50.0)};
    EXPECT_TRUE(boundary_independence_check(ThermalBath(1.3), 1.0, zs, &ratios));
    ASSERT_EQ(ratios.size(), 4u);
    EXPECT_NEAR(ratios[0], std::tanh(0.65), 1e-15);
}

TEST(BoundaryIndependence, NeedsTwoDistinctSamples) {
    EXPECT_THROW(boundary_independence_check(ThermalBath(1.0), 1.0, {BoundaryDistance::unbounded()}),
                 std::invalid_argument);
    EXPECT_THROW(boundary_independence_check(ThermalBath(1.0), 1.0,
                                             {BoundaryDistance::unbounded(), BoundaryDistance::unbounded()}),
                 std::invalid_argument);
    EXPECT_THROW(boundary_independence_check(ThermalBath(1.0), 1.0,
                                             {BoundaryDistance::at(1.0), BoundaryDistance::at(2.0)}),
                 std::invalid_argument);
}

TEST(ZeroSeparationProperty, EvolutionMatchesFamilyMember) {
    std::mt19937_64 rng(65);
    for (int i = 0; i < 5; ++i) {
        const auto k = kossakowski(AtomPairGeometry(1.0, 0.0, BoundaryDistance::at(0.3 + i)), ThermalBath(0.4 * (i + 1)));
        const Vec3 n = random_axis(rng);
        const BlochState start = matrix_to_bloch(random_density(rng));
        const BlochState end = evolve_to(start, k, n, 40.0 / k.A1, 1e-11);
        EXPECT_LT(bloch_distance(end, asymptotic_state_zero_sep(k.R(), start.tau(), n)), 1e-8);
    }
}
