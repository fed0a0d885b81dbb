#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "blowup/kernels.hpp"

using namespace blowup;
using kernels::cplx;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

class KernelSizes : public ::testing::TestWithParam<std::size_t> {};

}  // namespace

TEST_P(KernelSizes, ScaleSpectrum) {
    const std::size_t n = GetParam();
    const auto re = random_vector(n, 1), im = random_vector(n, 2), m = random_vector(n, 3, 0.0, 2.0);
    std::vector<cplx> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = b[i] = cplx(re[i], im[i]);
    kernels::scale_spectrum_serial(a, m);
    kernels::scale_spectrum_omp(b, m);
    EXPECT_EQ(a, b);
}

TEST_P(KernelSizes, LawsonUpdate) {
    const std::size_t n = GetParam();
    const auto re = random_vector(n, 4), im = random_vector(n, 5), decay = random_vector(n, 6, 0.0, 1.0);
    std::vector<cplx> u(n), f(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = cplx(re[i], im[i]);
        f[i] = cplx(im[i], -re[i]);
    }
    std::vector<cplx> a = u, b = u;
    kernels::lawson_update_serial(a, f, decay, 0.01);
    kernels::lawson_update_omp(b, f, decay, 0.01);
    EXPECT_EQ(a, b);
    if (n > 0) EXPECT_EQ(a[0], decay[0] * (u[0] + 0.01 * f[0]));
}

TEST_P(KernelSizes, ReactionMap) {
    const std::size_t n = GetParam();
    const auto u = random_vector(n, 7, 0.0, 3.0);
    std::vector<double> a(n), b(n);
    const auto f = [](double z) { return z * z; };
    kernels::reaction_map_serial(u, a, f);
    kernels::reaction_map_omp(u, b, f);
    EXPECT_EQ(a, b);
}

TEST_P(KernelSizes, ReductionsAreBitwiseEqual) {
    const std::size_t n = GetParam();
    const auto w = random_vector(n, 8, 0.0, 1.0), u = random_vector(n, 9);
    EXPECT_EQ(kernels::weighted_sum_serial(w, u), kernels::weighted_sum_omp(w, u));
    EXPECT_EQ(kernels::max_abs_serial(u), kernels::max_abs_omp(u));
    double naive = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        naive += w[i] * u[i];
        mx = std::max(mx, std::abs(u[i]));
    }
    EXPECT_NEAR(kernels::weighted_sum_omp(w, u), naive, 1e-10 * (1.0 + std::sqrt(static_cast<double>(n))));
    EXPECT_EQ(kernels::max_abs_omp(u), mx);
}

INSTANTIATE_TEST_SUITE_P(Sizes, KernelSizes, ::testing::Values(0, 1, 17, 4096, 4097, 100003, 1 << 20));

TEST(Kernels, SizeMismatchThrows) {
    std::vector<cplx> a(4);
    std::vector<double> m(3);
    EXPECT_THROW(kernels::scale_spectrum_omp(a, m), std::invalid_argument);
    std::vector<double> u(4), out(5);
    EXPECT_THROW(kernels::reaction_map_serial(u, out, [](double z) { return z; }), std::invalid_argument);
}
