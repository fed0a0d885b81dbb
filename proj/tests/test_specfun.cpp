#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "blowup/quadrature.hpp"
#include "blowup/specfun.hpp"
#include "oracle_values.hpp"

using namespace blowup;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST(LogGamma, KnownValues) {
    EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
    EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-14);
    EXPECT_NEAR(log_gamma(5.0), std::log(24.0), 1e-13);
    EXPECT_LT(rel(log_gamma(1e3), std::lgamma(1e3)), 1e-14);
    EXPECT_LT(rel(log_gamma(1e-3), std::lgamma(1e-3)), 1e-13);
}

TEST(LogGamma, RejectsNonPositive) {
    EXPECT_THROW(log_gamma(0.0), std::domain_error);
    EXPECT_THROW(log_gamma(-1.5), std::domain_error);
}

TEST(LogGamma, RecurrenceOnRandomArguments) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.1, 50.0);
    for (int i = 0; i < 100; ++i) {
        const double x = dist(rng);
        EXPECT_LT(rel(std::exp(log_gamma(x + 1.0)), x * std::exp(log_gamma(x))), 1e-12) << x;
    }
}

TEST(AbsGammaNegative, Values) {
    EXPECT_LT(rel(abs_gamma_negative(-0.5), 2.0 * std::sqrt(std::numbers::pi)), 1e-14);
    EXPECT_LT(rel(abs_gamma_negative(-0.25), oracle::kAbsGammaMinusQuarter), 1e-13);
    EXPECT_GT(abs_gamma_negative(-1e-3), abs_gamma_negative(-1e-2));
    EXPECT_THROW(abs_gamma_negative(-1.0), std::domain_error);
    EXPECT_THROW(abs_gamma_negative(0.0), std::domain_error);
    EXPECT_THROW(abs_gamma_negative(0.5), std::domain_error);
}

TEST(Hypergeometric, ElementaryCases) {
    EXPECT_DOUBLE_EQ(gauss_2f1(0.3, 1.7, 2.2, 0.0), 1.0);
    EXPECT_LT(rel(gauss_2f1(1.0, 1.0, 2.0, 0.5), 2.0 * std::log(2.0)), 1e-14);
    EXPECT_LT(rel(gauss_2f1(0.5, 0.5, 2.0, 1.0 - 1e-8), oracle::kHyperNearOne), 1e-10);
    EXPECT_LT(rel(gauss_2f1(0.5, 0.5, 2.0, 1.0 - 1e-8), 4.0 / std::numbers::pi), 1e-7);
    for (double z : {-3.0, -0.4, 0.2, 0.6, 0.9})
        EXPECT_LT(rel(gauss_2f1(1.0, 1.0, 2.0, z), -std::log1p(-z) / z), 1e-13) << z;
}

TEST(Hypergeometric, MatchesHighPrecisionOracle) {
    for (const auto& h : oracle::kHyper)
        EXPECT_LT(rel(gauss_2f1(h.a, h.b, h.c, h.z), h.value), 1e-10) << h.a << " " << h.b << " " << h.c << " " << h.z;
}

TEST(Hypergeometric, ComplementForm) {
    for (const auto& h : oracle::kHyper) {
        if (h.z <= 0.0) continue;
        EXPECT_LT(rel(gauss_2f1_complement(h.a, h.b, h.c, 1.0 - h.z), h.value), 1e-9);
    }
}

TEST(Hypergeometric, DomainErrors) {
    EXPECT_THROW(gauss_2f1(1.0, 1.0, 2.0, 1.0), std::domain_error);
    EXPECT_THROW(gauss_2f1(1.0, 1.0, 2.0, 1.5), std::domain_error);
    EXPECT_THROW(gauss_2f1(1.0, 1.0, -2.0, 0.3), std::domain_error);
    EXPECT_THROW(gauss_2f1(1.0, 1.0, 0.0, 0.3), std::domain_error);
}

TEST(Hypergeometric, PfaffConsistency) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> par(-1.5, 3.0), cpar(0.2, 3.5), zdist(-5.0, 0.95);
    int checked = 0;
    while (checked < 200) {
        const double a = par(rng), b = par(rng), c = cpar(rng), z = zdist(rng);
        const double direct = gauss_2f1(a, b, c, z);
        const double pfaff = std::pow(1.0 - z, -a) * gauss_2f1(a, c - b, c, z / (z - 1.0));
        const double scale = std::max(std::abs(direct), 1e-3);
        EXPECT_LT(std::abs(direct - pfaff) / scale, 1e-8) << a << " " << b << " " << c << " " << z;
        ++checked;
    }
}

TEST(FracConstant, Values) {
    EXPECT_LT(rel(frac_constant(1, 0.5), 1.0 / std::numbers::pi), 1e-12);
    EXPECT_LT(rel(frac_constant(2, 0.5), 0.5 / std::numbers::pi), 1e-12);
    EXPECT_LT(rel(frac_constant(3, 0.75), oracle::kC3_075), 1e-12);
    EXPECT_LT(rel(frac_constant(1, 0.25), oracle::kC1_025), 1e-12);
    for (int N : {1, 2, 3, 5})
        for (double s : {0.05, 0.3, 0.5, 0.9}) EXPECT_GT(frac_constant(N, s), 0.0);
}

TEST(OperatorParams, Validation) {
    EXPECT_NO_THROW((OperatorParams{0.0, 1.0, 0.5, 1}.validate()));
    EXPECT_THROW((OperatorParams{-1.0, 1.0, 0.5, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((OperatorParams{1.0, 0.0, 0.5, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((OperatorParams{1.0, 1.0, 1.0, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((OperatorParams{1.0, 1.0, 0.0, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((OperatorParams{1.0, 1.0, 0.5, 0}.validate()), std::invalid_argument);
}

TEST(PsiMass, ClosedValues) {
    EXPECT_LT(rel(psi_mass(1.0, 1), std::numbers::pi), 1e-13);
    EXPECT_LT(rel(psi_mass(2.0, 2), std::numbers::pi), 1e-13);
    EXPECT_LT(rel(psi_mass(2.0, 3), std::numbers::pi * std::numbers::pi), 1e-13);
    EXPECT_THROW(psi_mass(0.5, 1), std::domain_error);
    EXPECT_THROW(psi_mass(1.0, 2), std::domain_error);
}

TEST(PsiMass, AgreesWithRadialQuadrature) {
    for (int N : {1, 2, 3}) {
        for (double d : {0.6, 1.0, 2.0}) {
            const double beta = 0.5 * N + d;
            const Integrand g = [&](double r) { return std::pow(r, N - 1) * std::pow(1.0 + r * r, -beta); };
            QuadResult q = integrate(g, 0.0, 1.0, {1e-300, 1e-13, 4000});
            q += integrate_log_range(g, 1.0, 60.0 / (2.0 * beta - N), {1e-300, 1e-13, 4000});
            const double quad = unit_sphere_area(N) * q.value;
            EXPECT_LT(rel(psi_mass(beta, N), quad), 1e-8) << N << " " << beta;
        }
    }
}
