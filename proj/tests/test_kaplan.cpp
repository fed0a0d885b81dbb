#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "blowup/fracops.hpp"
#include "blowup/kaplan.hpp"
#include "blowup/quadrature.hpp"
#include "oracle_values.hpp"

using namespace blowup;

namespace {

OperatorParams frac_only(int N, double s) { return OperatorParams{0.0, 1.0, s, N}; }

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST(Kaplan, PsiAndKappaValues) {
    EXPECT_DOUBLE_EQ(psi_beta(0.0, 1.7), 1.0);
    EXPECT_DOUBLE_EQ(psi_beta(1.0, 1.0), 0.5);
    const double x[2] = {0.6, 0.8};
    EXPECT_DOUBLE_EQ(psi_beta(std::span<const double>(x, 2), 2.0), 0.25);

    const KaplanParams k1{1.0, 1.0, frac_only(1, 0.5)};
    EXPECT_NEAR(kappa_eps(0.0, k1), 1.0 / std::numbers::pi, 1e-15);
    const KaplanParams k2{1.0, 0.04, frac_only(1, 0.5)};
    // κ_ε(r) = ε^{N/2} κ₁(√ε r)
    for (double r : {0.0, 1.0, 7.5}) EXPECT_NEAR(kappa_eps(r, k2), 0.2 * kappa_eps(0.2 * r, k1), 1e-15);
}

TEST(Kaplan, KappaHasUnitMass) {
    for (int N : {1, 2, 3})
        for (double eps : {1.0, 0.1}) {
            const KaplanParams kp{0.5 * N + 1.0, eps, frac_only(N, 0.5)};
            const Integrand g = [&](double r) { return unit_sphere_area(N) * std::pow(r, N - 1) * kappa_eps(r, kp); };
            QuadResult q = integrate(g, 0.0, 1.0 / std::sqrt(eps), {1e-300, 1e-12, 4000});
            q += integrate_log_range(g, 1.0 / std::sqrt(eps), 40.0, {1e-300, 1e-12, 4000});
            EXPECT_NEAR(q.value, 1.0, 1e-9) << N << " " << eps;
        }
}

TEST(Kaplan, DerivativesMatchFiniteDifferences) {
    const double h = 1e-4;
    for (int N : {1, 2, 3}) {
        const double beta = 0.5 * N + 0.7;
        const KaplanParams kp{beta, 1.0, frac_only(N, 0.5)};
        for (double r : {0.3, 1.0, 2.5}) {
            const double d1 = (kappa_eps(r + h, kp) - kappa_eps(r - h, kp)) / (2 * h);
            const double d2 = (kappa_eps(r + h, kp) - 2 * kappa_eps(r, kp) + kappa_eps(r - h, kp)) / (h * h);
            EXPECT_NEAR(kappa1_derivative(r, beta, N), d1, 1e-8);
            EXPECT_NEAR(laplacian_kappa1(r, beta, N), d2 + (N - 1) / r * d1, 1e-6);
        }
    }
}

TEST(Kaplan, ClosedFormsAgree) {
    for (const auto& o : oracle::kFracPsi) {
        const OperatorParams op = frac_only(o.N, o.s);
        for (double r : {0.0, 0.2, 0.5, 0.9}) {
            EXPECT_LT(rel(closed_form_frac_psi(r, o.beta, op, o.theta), closed_form_frac_psi_direct(r, o.beta, op, o.theta)),
                      1e-9);
        }
        EXPECT_LT(rel(closed_form_frac_psi(0.5, o.beta, op, o.theta), o.at_half), 1e-9);
        EXPECT_LT(rel(closed_form_frac_psi(2.0, o.beta, op, o.theta), o.at_two), 1e-9);
        EXPECT_LT(rel(closed_form_frac_psi(10.0, o.beta, op, o.theta), o.at_ten), 1e-9);
    }
}

TEST(Kaplan, ThetaCalibration) {
    for (const auto& o : oracle::kFracPsi) {
        const OperatorParams op = frac_only(o.N, o.s);
        EXPECT_LT(rel(calibrate_theta(o.beta, op), o.theta), 1e-8);
        if (o.N <= 2) EXPECT_LT(rel(calibrate_theta_spectral(o.beta, op), o.theta), 1e-3);
    }
    EXPECT_THROW(calibrate_theta(0.5, frac_only(1, 0.5)), std::invalid_argument);
    EXPECT_THROW(calibrate_theta_spectral(2.0, frac_only(3, 0.5)), std::invalid_argument);
}

TEST(Kaplan, FarFieldEnvelope) {
    // -(-Δ)^s κ₁ |x|^{N+2s} tends to C_{N,s} because κ₁ has unit mass.
    for (int N : {1, 2, 3})
        for (double s : {0.25, 0.5, 0.75}) {
            const double beta = 0.5 * N + 1.0;
            const OperatorParams op = frac_only(N, s);
            const KaplanBounds kb = compute_bounds(KaplanParams{beta, 1.0, op});
            const double r = 1e4;
            const double env = -frac_laplacian_kappa1(r, beta, op, kb.theta) * std::pow(r, N + 2.0 * s);
            EXPECT_LT(rel(env, frac_constant(N, s)), 0.02) << N << " " << s;
            EXPECT_LE(kb.eta1, kb.eta2);
            EXPECT_GT(kb.eta1, 0.0);
        }
}

TEST(Kaplan, BoundsForCauchyKernel) {
    const KaplanBounds kb = compute_bounds(KaplanParams{1.0, 1.0, OperatorParams{1.0, 1.0, 0.5, 1}});
    EXPECT_NEAR(kb.A, 2.0 / std::numbers::pi, 1e-12);
    EXPECT_NEAR(kb.theta, 1.0, 1e-9);
    // (-Δ)^{1/2} κ₁ = (1 - r²)/(π (1 + r²)²), largest at the origin.
    EXPECT_NEAR(kb.B, 1.0 / std::numbers::pi, 1e-9);
    EXPECT_GT(kb.R0, 1.0);
    EXPECT_LT(kb.R0, 1.1);
    EXPECT_EQ(kb.lambda0, std::max(kb.lambda1, kb.lambda2));
}

TEST(Kaplan, PureFractionalHasNoLocalRate) {
    const KaplanBounds kb = compute_bounds(KaplanParams{1.5, 1.0, frac_only(1, 0.5)});
    EXPECT_EQ(kb.lambda1, 0.0);
    EXPECT_GT(kb.lambda2, 0.0);
}

TEST(Kaplan, SubsolutionHoldsAboveTheRate) {
    const OperatorParams op{1.0, 1.0, 0.5, 1};
    const double beta = 1.5;
    const KaplanBounds kb = compute_bounds(KaplanParams{beta, 1.0, op});
    for (double eps : {1.0, 0.1, 0.01}) {
        const KaplanParams kp{beta, eps, op};
        const std::vector<double> radii = verification_radii(eps);
        for (double factor : {1.0, 2.0, 10.0}) {
            const double lambda = factor * std::pow(eps, op.s) * kb.lambda0;
            const SubsolutionReport rep = verify_subsolution(kp, lambda, radii, kb);
            EXPECT_TRUE(rep.pass) << eps << " " << factor << " worst r " << rep.worst_radius;
        }
        EXPECT_FALSE(verify_subsolution(kp, 0.0, radii, kb).pass) << eps;
    }
}

TEST(Kaplan, VerificationRadii) {
    const std::vector<double> r = verification_radii(0.01, 100);
    EXPECT_EQ(r.front(), 0.0);
    EXPECT_NEAR(r.back(), 1e7, 1e-3);
    EXPECT_TRUE(std::is_sorted(r.begin(), r.end()));
    EXPECT_THROW(verification_radii(1.0, 3), std::invalid_argument);
}

TEST(Kaplan, ParameterValidation) {
    EXPECT_THROW((KaplanParams{0.5, 1.0, frac_only(1, 0.5)}.validate()), std::invalid_argument);
    EXPECT_THROW((KaplanParams{1.0, 1.0, frac_only(2, 0.5)}.validate()), std::invalid_argument);
    EXPECT_THROW((KaplanParams{1.5, 0.0, frac_only(1, 0.5)}.validate()), std::invalid_argument);
    EXPECT_THROW((KaplanParams{1.5, 1.5, frac_only(1, 0.5)}.validate()), std::invalid_argument);
}
