#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "blowup/fracops.hpp"
#include "blowup/spectral.hpp"

using namespace blowup;

namespace {

double symbol_at(double xi, const OperatorParams& op) { return op.a * xi * xi + op.b * std::pow(xi, 2.0 * op.s); }

}  // namespace

TEST(Spectral, CosineIsAnEigenfunction1d) {
    const double L = 5.0;
    const int M = 256;
    const OperatorParams op{0.3, 1.2, 0.35, 1};
    const int k = 7;
    const double xi = std::numbers::pi * k / L;
    GridField g = make_grid(L, M, 1);
    for (int j = 0; j < M; ++j) g.data[j] = std::cos(xi * g.coord(j));
    const GridField out = spectral_apply(g, op);
    for (int j = 0; j < M; ++j) EXPECT_NEAR(out.data[j], symbol_at(xi, op) * g.data[j], 1e-11);
}

TEST(Spectral, CosineIsAnEigenfunction2d) {
    const double L = 3.0;
    const int M = 64;
    const OperatorParams op{0.0, 1.0, 0.6, 2};
    const double k1 = std::numbers::pi * 2 / L, k2 = std::numbers::pi * 5 / L;
    GridField g = make_grid(L, M, 2);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) g.data[i * M + j] = std::cos(k1 * g.coord(i)) * std::cos(k2 * g.coord(j));
    const GridField out = spectral_apply(g, op);
    const double lam = symbol_at(std::hypot(k1, k2), op);
    for (std::size_t n = 0; n < g.size(); ++n) EXPECT_NEAR(out.data[n], lam * g.data[n], 1e-11);
}

TEST(Spectral, ZeroFieldAndConstant) {
    const OperatorParams op{1.0, 1.0, 0.5, 1};
    const GridField zero = make_grid(4.0, 64, 1);
    for (double v : spectral_apply(zero, op).data) EXPECT_EQ(v, 0.0);
    GridField c = zero;
    std::fill(c.data.begin(), c.data.end(), 3.0);
    for (double v : spectral_apply(c, op).data) EXPECT_NEAR(v, 0.0, 1e-13);
}

TEST(Spectral, GaussianAgreesWithQuadrature2d) {
    const OperatorParams op{0.0, 1.0, 0.5, 2};
    const double L = 51.2;
    const int M = 1024;
    const GridField g = sample_radial(L, M, 2, [](double r) { return std::exp(-r * r); });
    const GridField out = spectral_apply(g, op);
    const RadialProfile prof = gaussian_profile(1.0, 1.0);
    const double scale = frac_laplacian_pv(prof, 0.0, op);
    for (int j : {0, 5, 10, 20}) {
        const std::size_t idx = static_cast<std::size_t>(M / 2) * M + M / 2 + j;
        EXPECT_NEAR(out.data[idx], frac_laplacian_pv(prof, g.radius(idx), op), 1e-3 * scale);
    }
}

TEST(Spectral, SerialAndParallelAgreeExactly) {
    const OperatorParams op{0.5, 1.0, 0.25, 2};
    const GridField g = sample_radial(10.0, 128, 2, [](double r) { return 1.0 / (1.0 + r * r); });
    const GridField a = spectral_apply(g, op);
    const GridField b = spectral_apply_serial(g, op);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.data[i], b.data[i]);
}

TEST(Spectral, ShapeErrors) {
    const GridField g = make_grid(4.0, 64, 1);
    EXPECT_THROW(spectral_apply(g, OperatorParams{0.0, 1.0, 0.5, 2}), std::invalid_argument);
    EXPECT_THROW(make_grid(4.0, 63, 1), std::invalid_argument);
    EXPECT_THROW(make_grid(4.0, 64, 3), std::invalid_argument);
    GridField bad = g;
    bad.data.pop_back();
    EXPECT_THROW(spectral_apply(bad, OperatorParams{0.0, 1.0, 0.5, 1}), std::invalid_argument);
}

TEST(Spectral, SymbolIsNonnegativeAndRadial) {
    SpectralGrid grid(6.0, 32, 2);
    const OperatorParams op{0.2, 1.0, 0.4, 2};
    const std::vector<double> sym = grid.symbol(op);
    const auto xi2 = grid.xi_squared();
    ASSERT_EQ(sym.size(), grid.size());
    for (std::size_t i = 0; i < sym.size(); ++i) {
        EXPECT_GE(sym[i], 0.0);
        EXPECT_NEAR(sym[i], symbol_at(std::sqrt(xi2[i]), op), 1e-12 * (1.0 + sym[i]));
    }
}
