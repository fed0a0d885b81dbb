#include "blowup/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace blowup::kernels {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": size mismatch");
}

std::ptrdiff_t ssize(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

double block_weighted(std::span<const double> w, std::span<const double> u, std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += w[i] * u[i];
    return acc;
}

}  // namespace

void scale_spectrum_serial(std::span<cplx> data, std::span<const double> mult) {
    require_same(data.size(), mult.size(), "scale_spectrum");
    for (std::size_t i = 0; i < data.size(); ++i) data[i] *= mult[i];
}

void scale_spectrum_omp(std::span<cplx> data, std::span<const double> mult) {
    require_same(data.size(), mult.size(), "scale_spectrum");
    const std::ptrdiff_t n = ssize(data.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) data[i] *= mult[i];
}

void lawson_update_serial(std::span<cplx> u_hat, std::span<const cplx> f_hat, std::span<const double> decay,
                          double dt) {
    require_same(u_hat.size(), f_hat.size(), "lawson_update");
    require_same(u_hat.size(), decay.size(), "lawson_update");
    for (std::size_t i = 0; i < u_hat.size(); ++i) u_hat[i] = decay[i] * (u_hat[i] + dt * f_hat[i]);
}

void lawson_update_omp(std::span<cplx> u_hat, std::span<const cplx> f_hat, std::span<const double> decay,
                       double dt) {
    require_same(u_hat.size(), f_hat.size(), "lawson_update");
    require_same(u_hat.size(), decay.size(), "lawson_update");
    const std::ptrdiff_t n = ssize(u_hat.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) u_hat[i] = decay[i] * (u_hat[i] + dt * f_hat[i]);
}

void reaction_map_serial(std::span<const double> u, std::span<double> out, const std::function<double(double)>& f) {
    require_same(u.size(), out.size(), "reaction_map");
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = f(u[i]);
}

void reaction_map_omp(std::span<const double> u, std::span<double> out, const std::function<double(double)>& f) {
    require_same(u.size(), out.size(), "reaction_map");
    const std::ptrdiff_t n = ssize(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(u[i]);
}

double weighted_sum_serial(std::span<const double> w, std::span<const double> u) {
    require_same(w.size(), u.size(), "weighted_sum");
    double total = 0.0;
    for (std::size_t lo = 0; lo < u.size(); lo += kReductionBlock)
        total += block_weighted(w, u, lo, std::min(u.size(), lo + kReductionBlock));
    return total;
}

double weighted_sum_omp(std::span<const double> w, std::span<const double> u) {
    require_same(w.size(), u.size(), "weighted_sum");
    const std::size_t blocks = (u.size() + kReductionBlock - 1) / kReductionBlock;
    std::vector<double> partial(blocks, 0.0);
    const std::ptrdiff_t nb = ssize(blocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
        partial[b] = block_weighted(w, u, lo, std::min(u.size(), lo + kReductionBlock));
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

double max_abs_serial(std::span<const double> u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_omp(std::span<const double> u) {
    double m = 0.0;
    const std::ptrdiff_t n = ssize(u.size());
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(u[i]));
    return m;
}

}  // namespace blowup::kernels
