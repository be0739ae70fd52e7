#include <gtest/gtest.h>

#include <cmath>

#include "scarf/factorization.hpp"
#include "scarf/verification.hpp"

using scarf::Complex;
using scarf::LadderConvention;
using scarf::ScarfParams;

TEST(Ladder, CoshSinhIdentity) {
    const auto params = ScarfParams::pt_symmetric(1.3, 4.0, 2.0);
    for (const Complex x : {Complex{0.0, 0.0}, Complex{1.2, -0.7}, Complex{-3.1, 0.4}}) {
        const Complex f = scarf::ladder_f(params, x);
        const Complex g = scarf::ladder_g(params, x);
        EXPECT_NEAR(std::abs(f * f - g * g - 1.0), 0.0, 1e-12);
    }
}

TEST(Ladder, StructureFunctions) {
    const auto herm = ScarfParams::hermitian(2.0, 6.0, 2.0);
    EXPECT_NEAR(std::abs(scarf::gamma_of_H(herm, 8.0) - 6.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(scarf::c_of_E(herm, 8.0) - std::sqrt(1.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(scarf::alpha_of_H(herm, 4.0) - Complex{0.0, 4.0}), 0.0, 1e-15);

    const auto pt = ScarfParams::pt_symmetric(2.0, 4.0, 12.0);
    // gamma = 4 - 144 / 13.7; mpmath
    EXPECT_NEAR(std::abs(scarf::c_of_E(pt, 13.7) - 4.495658895546846), 0.0, 1e-13);
    EXPECT_THROW(scarf::gamma_of_H(pt, 0.0), scarf::DomainError);
    EXPECT_THROW(scarf::alpha_of_H(pt, 0.0), scarf::DomainError);
}

TEST(EnergyWindows, Hermitian) {
    const auto w = scarf::energy_windows(ScarfParams::hermitian(2.0, 6.0, 2.0));
    ASSERT_EQ(w.intervals.size(), 1u);
    EXPECT_NEAR(w.intervals[0].lower, 6.605551275463989, 1e-12);
    EXPECT_TRUE(std::isinf(w.intervals[0].upper));
    EXPECT_FALSE(w.all_positive);
    EXPECT_FALSE(w.contains(6.6));
    EXPECT_TRUE(w.contains(6.61));
}

TEST(EnergyWindows, PtSplit) {
    const auto w = scarf::energy_windows(ScarfParams::pt_symmetric(2.0, 6.0, 2.0));
    ASSERT_EQ(w.intervals.size(), 2u);
    EXPECT_EQ(w.intervals[0].lower, 0.0);
    EXPECT_NEAR(w.intervals[0].upper, 0.7639320225002103, 1e-12);
    EXPECT_NEAR(w.intervals[1].lower, 5.23606797749979, 1e-12);
    EXPECT_TRUE(w.contains(0.5));
    EXPECT_FALSE(w.contains(3.0));
    EXPECT_TRUE(w.contains(8.0));
}

TEST(EnergyWindows, PtAllPositive) {
    const auto w = scarf::energy_windows(ScarfParams::pt_symmetric(2.0, 4.0, 12.0));
    EXPECT_TRUE(w.all_positive);
    EXPECT_TRUE(w.contains(1e-6));
    EXPECT_TRUE(w.contains(13.7));
}

TEST(EnergyWindows, DegenerateDiscriminantExcludesSinglePoint) {
    // gamma0^2 = 4 delta_I^2: c(E)^2 = (E - 2)^2 / E vanishes only at E = 2
    const auto w = scarf::energy_windows(ScarfParams::pt_symmetric(2.0, 4.0, 2.0));
    EXPECT_FALSE(w.contains(2.0));
    EXPECT_TRUE(w.contains(1.999));
    EXPECT_TRUE(w.contains(2.001));
}

TEST(EnergyWindows, AgreeWithSignOfCSquared) {
    scarf::UniformSource rng(7);
    for (const auto& params : scarf::reference_parameter_sets())
        EXPECT_EQ(scarf::window_mismatches(params, 500, rng), 0u);
}

TEST(Factorization, IdentityHoldsForResolvedConvention) {
    scarf::UniformSource rng(11);
    for (const auto& params : scarf::reference_parameter_sets())
        EXPECT_LT(scarf::factorization_identity_residual(params, 1000, rng), 1e-10);
}

TEST(Factorization, ConventionResolution) {
    // A+ A- + gamma = H fixes only sqrt_sign == phi_sign; {A+, H} = +i alpha A+
    // then singles out (+1, +1).
    const auto params = ScarfParams::pt_symmetric(2.0, 3.0, 2.0);
    const auto points = [&] {
        scarf::UniformSource rng(3);
        return scarf::random_on_shell_points(params, 50, rng);
    }();
    int identity_ok = 0;
    int both_ok = 0;
    for (int s : {-1, 1}) {
        for (int ph : {-1, 1}) {
            const LadderConvention conv{s, ph};
            scarf::UniformSource rng(5);
            const bool id = scarf::factorization_identity_residual(params, 200, rng, conv) < 1e-10;
            const bool br = scarf::ladder_hamiltonian_bracket_residual(params, points, conv) < 1e-5;
            identity_ok += id;
            if (id && br) {
                ++both_ok;
                EXPECT_EQ(s, 1);
                EXPECT_EQ(ph, 1);
            }
            if (id) {
                EXPECT_EQ(s, ph);
            }
        }
    }
    EXPECT_EQ(identity_ok, 2);
    EXPECT_EQ(both_ok, 1);
}

TEST(Factorization, FlippedPhiSignIsDetected) {
    const LadderConvention mutant{+1, -1};
    scarf::UniformSource rng(13);
    EXPECT_GT(scarf::factorization_identity_residual(ScarfParams::hermitian(2.0, 6.0, 2.0), 100, rng, mutant), 1.0);

    scarf::VerifyOptions opts;
    opts.filter = "factorization.identity";
    opts.convention = mutant;
    const auto results = scarf::run_verification(opts);
    ASSERT_FALSE(results.empty());
    for (const auto& r : results) EXPECT_FALSE(r.passed) << r.name;
}

TEST(Factorization, InitialIntegralsOfMotion) {
    // q+- = -+ i c exp(-+ theta0) on the closed form at t = 0
    const auto params = ScarfParams::pt_symmetric(2.0, 3.0, 2.0);
    scarf::TrajectorySpec spec;
    spec.params = params;
    spec.energy = Complex{4.0, 0.5};
    spec.theta0 = Complex{0.3, 0.1};
    const auto xs = scarf::position_at(spec, 0.0);
    const scarf::PhasePoint pt{xs.x, scarf::momentum_at(spec, 0.0, xs.x).value, 0.0};
    const auto [qp, qm] = scarf::q_values(params, pt, spec.energy, 0.0);
    const Complex c = scarf::c_of_E(params, spec.energy);
    EXPECT_LT(std::abs(qp - (-scarf::kI * c * std::exp(-spec.theta0))), 1e-12);
    EXPECT_LT(std::abs(qm - (scarf::kI * c * std::exp(spec.theta0))), 1e-12);
}

TEST(PoissonBracket, Canonical) {
    const auto fx = [](Complex x, Complex) { return x; };
    const auto fp = [](Complex, Complex p) { return p; };
    const scarf::PhasePoint pt{Complex{0.3, 0.2}, Complex{-1.0, 0.5}};
    EXPECT_NEAR(std::abs(scarf::poisson_bracket(fx, fp, pt) - 1.0), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(scarf::poisson_bracket(fp, fx, pt) + 1.0), 0.0, 1e-9);
}

TEST(PoissonBracket, DeformedAlgebra) {
    scarf::UniformSource rng(17);
    for (const auto& params : scarf::reference_parameter_sets()) {
        const auto pts = scarf::random_on_shell_points(params, 100, rng);
        EXPECT_LT(scarf::ladder_hamiltonian_bracket_residual(params, pts), 1e-5);
        EXPECT_LT(scarf::ladder_pair_bracket_residual(params, pts), 1e-4);
    }
}

TEST(PoissonBracket, PairCoefficient) {
    const auto params = ScarfParams::hermitian(2.0, 6.0, 2.0);
    // -i alpha0 (1 + delta^2 / E^2) at E = 8
    EXPECT_NEAR(std::abs(scarf::ladder_bracket_coefficient(params, 8.0) - Complex{0.0, -2.125}), 0.0, 1e-15);
}
