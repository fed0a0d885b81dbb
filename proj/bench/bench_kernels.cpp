// Serial reference kernels against their OpenMP variants.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "blowup/kernels.hpp"
#include "blowup/spectral.hpp"

namespace {

using blowup::kernels::cplx;

std::vector<double> ramp(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + std::sin(0.001 * static_cast<double>(i));
    return v;
}

std::vector<cplx> cramp(std::size_t n) {
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = {std::cos(0.01 * i), std::sin(0.02 * i)};
    return v;
}

template <bool Parallel>
void BM_LawsonUpdate(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    auto u = cramp(n);
    const auto f = cramp(n);
    const auto decay = ramp(n);
    for (auto _ : st) {
        if constexpr (Parallel) blowup::kernels::lawson_update_omp(u, f, decay, 1e-9);
        else blowup::kernels::lawson_update_serial(u, f, decay, 1e-9);
        benchmark::DoNotOptimize(u.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(n));
}

template <bool Parallel>
void BM_ReactionMap(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto u = ramp(n);
    std::vector<double> out(n);
    const std::function<double(double)> f = [](double z) { return std::pow(z, 1.7); };
    for (auto _ : st) {
        if constexpr (Parallel) blowup::kernels::reaction_map_omp(u, out, f);
        else blowup::kernels::reaction_map_serial(u, out, f);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(n));
}

template <bool Parallel>
void BM_WeightedSum(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto w = ramp(n);
    const auto u = ramp(n);
    for (auto _ : st) {
        double r = Parallel ? blowup::kernels::weighted_sum_omp(w, u) : blowup::kernels::weighted_sum_serial(w, u);
        benchmark::DoNotOptimize(r);
    }
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(n));
}

template <bool Parallel>
void BM_MaxAbs(benchmark::State& st) {
    const auto u = ramp(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) {
        double r = Parallel ? blowup::kernels::max_abs_omp(u) : blowup::kernels::max_abs_serial(u);
        benchmark::DoNotOptimize(r);
    }
}

template <bool Parallel>
void BM_SpectralApply2d(benchmark::State& st) {
    const int M = static_cast<int>(st.range(0));
    const blowup::GridField g = blowup::sample_radial(20.0, M, 2, [](double r) { return std::exp(-r * r); });
    blowup::OperatorParams op;
    op.N = 2;
    for (auto _ : st) {
        auto out = Parallel ? blowup::spectral_apply(g, op) : blowup::spectral_apply_serial(g, op);
        benchmark::DoNotOptimize(out.data.data());
    }
}

}  // namespace

BENCHMARK(BM_LawsonUpdate<false>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_LawsonUpdate<true>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_ReactionMap<false>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_ReactionMap<true>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_WeightedSum<false>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_WeightedSum<true>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_MaxAbs<false>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_MaxAbs<true>)->RangeMultiplier(16)->Range(1 << 12, 1 << 22);
BENCHMARK(BM_SpectralApply2d<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_SpectralApply2d<true>)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
