#pragma once

#include <complex>
#include <functional>
#include <span>

// Data-parallel loops used by the spectral operator and the simulator. Each
// kernel has a serial reference and an OpenMP variant; reductions use a fixed
// block decomposition so results do not depend on the thread count.
namespace blowup::kernels {

using cplx = std::complex<double>;

inline constexpr std::size_t kReductionBlock = 4096;

/// data[i] *= mult[i]
void scale_spectrum_serial(std::span<cplx> data, std::span<const double> mult);
void scale_spectrum_omp(std::span<cplx> data, std::span<const double> mult);

/// Lawson-Euler update: u_hat[i] = decay[i] * (u_hat[i] + dt * f_hat[i]).
void lawson_update_serial(std::span<cplx> u_hat, std::span<const cplx> f_hat, std::span<const double> decay,
                          double dt);
void lawson_update_omp(std::span<cplx> u_hat, std::span<const cplx> f_hat, std::span<const double> decay,
                       double dt);

/// out[i] = f(u[i])
void reaction_map_serial(std::span<const double> u, std::span<double> out, const std::function<double(double)>& f);
void reaction_map_omp(std::span<const double> u, std::span<double> out, const std::function<double(double)>& f);

/// Σ w[i] u[i], summed block by block in a fixed order.
double weighted_sum_serial(std::span<const double> w, std::span<const double> u);
double weighted_sum_omp(std::span<const double> w, std::span<const double> u);

double max_abs_serial(std::span<const double> u);
double max_abs_omp(std::span<const double> u);

}  // namespace blowup::kernels
