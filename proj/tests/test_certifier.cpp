#include <gtest/gtest.h>

#include <cmath>

#include "blowup/certifier.hpp"
#include "oracle_values.hpp"

using namespace blowup;

namespace {

const OperatorParams kHalf{1.0, 1.0, 0.5, 1};

KaplanParams unit_params(double beta = 1.0, double eps = 1.0) { return KaplanParams{beta, eps, kHalf}; }

}  // namespace

TEST(WeightedMass, MatchesTrapezoidOracle) {
    const double I = weighted_mass(gaussian_datum(1.0, 1.0), unit_params());
    EXPECT_NEAR(I, oracle::kWeightedMassTrapezoid, 1e-12);
}

TEST(WeightedMass, ZeroConstantAndLinearity) {
    EXPECT_EQ(weighted_mass(constant_datum(0.0), unit_params()), 0.0);
    EXPECT_EQ(weighted_mass(gaussian_datum(0.0, 2.0), unit_params()), 0.0);
    for (int N : {1, 2, 3}) {
        const KaplanParams kp{0.5 * N + 1.0, 0.01, OperatorParams{0.0, 1.0, 0.5, N}};
        EXPECT_NEAR(weighted_mass(constant_datum(2.5), kp), 2.5, 1e-12);
    }
    for (const InitialDatum& u : {gaussian_datum(1.0, 0.7), bump_datum(1.0, 2.0), power_tail_datum(1.0, 3.0),
                                  tabulated_datum({0.0, 1.0, 2.0, 4.0}, {1.0, 0.8, 0.2, 0.0})}) {
        const double base = weighted_mass(u, unit_params(1.2, 0.1));
        EXPECT_GT(base, 0.0) << u.describe();
        EXPECT_NEAR(weighted_mass(u.scaled(3.7), unit_params(1.2, 0.1)), 3.7 * base, 1e-10 * base) << u.describe();
    }
}

TEST(WeightedMass, ScaledMassGrowsAsEpsilonShrinks) {
    // I(ε) / ε^{N/2} = ∫ u₀ (1 + ε|x|²)^{-β} / c_β increases as ε decreases.
    const InitialDatum u = gaussian_datum(1.0, 3.0);
    double prev = 0.0;
    for (double eps : epsilon_grid(false)) {
        const double scaled = weighted_mass(u, unit_params(1.5, eps)) / std::sqrt(eps);
        EXPECT_GT(scaled, prev) << eps;
        prev = scaled;
    }
}

TEST(Certify, ZeroDatumIsNotCertified) {
    const KaplanBounds kb = compute_bounds(unit_params());
    const KaplanCertificate c = certify(constant_datum(0.0), power_reaction(2.0), unit_params(), kb);
    EXPECT_FALSE(c.certified);
    EXPECT_FALSE(c.blowup_time_bound.has_value());
    EXPECT_EQ(c.integral_I, 0.0);
}

TEST(Certify, LargeAmplitudeIsCertifiedAndMonotone) {
    const KaplanBounds kb = compute_bounds(unit_params());
    const ReactionSpec f = power_reaction(2.0);
    const double unit = weighted_mass(gaussian_datum(1.0, 1.0), unit_params());
    const double thr = s_f(f, kb.lambda0);
    const KaplanCertificate big = certify(gaussian_datum(2.0 * thr / unit, 1.0), f, unit_params(), kb);
    EXPECT_TRUE(big.certified);
    EXPECT_NEAR(big.threshold, thr, 1e-12 * thr);
    EXPECT_NEAR(big.lambda, kb.lambda0, 1e-15);
    ASSERT_TRUE(big.blowup_time_bound.has_value());
    EXPECT_NEAR(*big.blowup_time_bound, osgood_blowup_bound(f, big.lambda, big.integral_I), 1e-12);
    EXPECT_FALSE(certify(gaussian_datum(0.5 * thr / unit, 1.0), f, unit_params(), kb).certified);

    double prev_margin = -INFINITY, prev_T = INFINITY;
    for (double amp : {2.0, 3.0, 5.0, 10.0}) {
        const KaplanCertificate c = certify(gaussian_datum(amp * thr / unit, 1.0), f, unit_params(), kb);
        EXPECT_GT(c.margin, prev_margin);
        EXPECT_LT(*c.blowup_time_bound, prev_T);
        prev_margin = c.margin;
        prev_T = *c.blowup_time_bound;
    }
}

TEST(Certify, LambdaScalesWithEpsilon) {
    const KaplanBounds kb = compute_bounds(unit_params());
    const KaplanCertificate c = certify(gaussian_datum(1.0, 1.0), power_reaction(1.5), unit_params(1.0, 0.01), kb);
    EXPECT_NEAR(c.lambda, 0.1 * kb.lambda0, 1e-15);
    EXPECT_NEAR(c.threshold, c.lambda * c.lambda, 1e-12);
}

TEST(Certify, CertificateIsBackedBySubsolution) {
    const OperatorParams op{1.0, 1.0, 0.5, 1};
    const double beta = 1.5;
    const SearchResult res = epsilon_search(gaussian_datum(1.0, 1.0), power_reaction(1.5), beta, op, {true, 1e-10});
    ASSERT_TRUE(res.best.has_value());
    const KaplanCertificate& c = *res.best;
    const KaplanParams kp{beta, c.epsilon, op};
    EXPECT_TRUE(verify_subsolution(kp, c.lambda, verification_radii(c.epsilon), res.bounds).pass);
    EXPECT_GT(c.integral_I, c.threshold);
}

TEST(EpsilonSearch, Grid) {
    const std::vector<double> coarse = epsilon_grid(false);
    ASSERT_EQ(coarse.size(), 13u);
    EXPECT_EQ(coarse.front(), 1.0);
    EXPECT_NEAR(coarse.back(), 1e-6, 1e-20);
    const std::vector<double> fine = epsilon_grid(true, 1e-10);
    EXPECT_EQ(fine.size(), 21u);
    EXPECT_NEAR(fine.back(), 1e-10, 1e-24);
}

TEST(EpsilonSearch, SubcriticalSmallDatum) {
    // p = 1.5 < p_F = 2: small ε compensates for a small datum.
    const SearchResult res = epsilon_search(gaussian_datum(0.5, 1.0), power_reaction(1.5), 1.0, kHalf, {true, 1e-10});
    ASSERT_TRUE(res.best.has_value());
    EXPECT_LT(res.best->epsilon, 1.0);
    ASSERT_TRUE(res.scaling_exponent.has_value());
    EXPECT_NEAR(*res.scaling_exponent, 0.5, 1e-15);
    for (const SearchPoint& p : res.curve) EXPECT_LE(p.relative_margin, res.best->relative_margin() + 1e-15);
}

TEST(EpsilonSearch, SupercriticalTinyDatumFails) {
    const SearchResult res = epsilon_search(gaussian_datum(1e-4, 1.0), power_reaction(3.0), 1.0, kHalf, {true, 1e-10});
    EXPECT_FALSE(res.best.has_value());
    EXPECT_TRUE(res.refined);
    EXPECT_EQ(res.curve.size(), 21u);
    EXPECT_LT(*res.scaling_exponent, 0.0);
}

TEST(EpsilonSearch, RefinementOnlyWhenNeeded) {
    const SearchResult res = epsilon_search(gaussian_datum(50.0, 1.0), power_reaction(2.0), 1.0, kHalf, {true, 1e-10});
    ASSERT_TRUE(res.best.has_value());
    EXPECT_FALSE(res.refined);
    EXPECT_EQ(res.curve.size(), 13u);
}

TEST(Fujita, Exponent) {
    EXPECT_DOUBLE_EQ(fujita_exponent(kHalf), 2.0);
    EXPECT_DOUBLE_EQ(fujita_exponent(OperatorParams{0.0, 1.0, 0.25, 2}), 1.25);
    EXPECT_DOUBLE_EQ(default_beta(1), 1.5);
    EXPECT_DOUBLE_EQ(default_beta(2), 2.0);
}

TEST(Fujita, SubcriticalRowsAreCertified) {
    const FujitaTable t = fujita_scan(kHalf, gaussian_datum(1.0, 1.0), 1.0, {1.2, 1.5, 1.8});
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_TRUE(t.complete());
    for (const FujitaRow& r : t.rows) {
        EXPECT_TRUE(r.subcritical);
        EXPECT_TRUE(r.certified) << r.p;
        EXPECT_GT(r.epsilon, 0.0);
        EXPECT_TRUE(r.time_bound.has_value());
    }
}

TEST(Fujita, SupercriticalRowMayFail) {
    const FujitaTable t = fujita_scan(kHalf, gaussian_datum(1e-4, 1.0), 1.0, {3.0});
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_FALSE(t.rows[0].subcritical);
    EXPECT_FALSE(t.rows[0].certified);
    EXPECT_EQ(t.rows[0].epsilon, 0.0);
    EXPECT_TRUE(t.complete());
}

TEST(Fujita, TrivialDatumIsFlagged) {
    const FujitaTable t = fujita_scan(kHalf, constant_datum(0.0), 1.0, {1.5});
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_TRUE(t.rows[0].trivial_datum);
    EXPECT_FALSE(t.rows[0].certified);
    EXPECT_TRUE(t.complete());
}

TEST(Fujita, RejectsLinearExponent) {
    EXPECT_THROW(fujita_scan(kHalf, gaussian_datum(1.0, 1.0), 1.0, {1.0}), std::invalid_argument);
}
