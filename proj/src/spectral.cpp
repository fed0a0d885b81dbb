#include "blowup/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "blowup/kernels.hpp"

namespace blowup {

namespace {

// The FFTW planner is not thread safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::size_t grid_points(int M, int dim) {
    std::size_t n = 1;
    for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(M);
    return n;
}

void check_shape(double L, int M, int dim) {
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid: box half-width must be positive");
    if (M < 2 || M % 2 != 0) throw std::invalid_argument("grid: points per dimension must be even and positive");
    if (dim != 1 && dim != 2) throw std::invalid_argument("grid: dimension must be 1 or 2");
}

GridField apply_impl(const GridField& field, const OperatorParams& op, bool parallel) {
    field.validate();
    op.validate();
    if (op.N != field.dim) throw std::invalid_argument("spectral_apply: operator dimension differs from the grid");
    SpectralGrid grid(field.L, field.M, field.dim);
    std::vector<std::complex<double>> spec(grid.size());
    grid.forward(field.data, spec);
    const std::vector<double> mult = grid.symbol(op);
    if (parallel)
        kernels::scale_spectrum_omp(spec, mult);
    else
        kernels::scale_spectrum_serial(spec, mult);
    GridField out = field;
    const double residue = grid.inverse(spec, out.data);
    const double norm = kernels::max_abs_serial(field.data);
    if (residue > 1e-10 * std::max(norm, 1e-300) && residue > 1e-300)
        throw std::runtime_error("spectral_apply: imaginary residue " + std::to_string(residue) +
                                 " exceeds tolerance");
    return out;
}

}  // namespace

double GridField::radius(std::size_t index) const {
    if (dim == 1) return std::abs(coord(static_cast<int>(index)));
    const int i = static_cast<int>(index / M);
    const int j = static_cast<int>(index % M);
    return std::hypot(coord(i), coord(j));
}

void GridField::validate() const {
    check_shape(L, M, dim);
    if (data.size() != grid_points(M, dim)) throw std::invalid_argument("grid: data size does not match M^dim");
    for (double v : data)
        if (!std::isfinite(v)) throw std::invalid_argument("grid: non-finite entry");
}

GridField make_grid(double L, int M, int dim) {
    check_shape(L, M, dim);
    return GridField{L, M, dim, std::vector<double>(grid_points(M, dim), 0.0)};
}

GridField sample_radial(double L, int M, int dim, const std::function<double(double)>& U) {
    GridField g = make_grid(L, M, dim);
    for (std::size_t i = 0; i < g.size(); ++i) g.data[i] = U(g.radius(i));
    return g;
}

struct SpectralGrid::Impl {
    fftw_complex* buffer = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

SpectralGrid::SpectralGrid(double L, int M, int dim) : impl_(std::make_unique<Impl>()) {
    check_shape(L, M, dim);
    n_ = grid_points(M, dim);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        impl_->buffer = fftw_alloc_complex(n_);
        if (dim == 1) {
            impl_->fwd = fftw_plan_dft_1d(M, impl_->buffer, impl_->buffer, FFTW_FORWARD, FFTW_ESTIMATE);
            impl_->bwd = fftw_plan_dft_1d(M, impl_->buffer, impl_->buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
        } else {
            impl_->fwd = fftw_plan_dft_2d(M, M, impl_->buffer, impl_->buffer, FFTW_FORWARD, FFTW_ESTIMATE);
            impl_->bwd = fftw_plan_dft_2d(M, M, impl_->buffer, impl_->buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
    }
    if (!impl_->buffer || !impl_->fwd || !impl_->bwd) throw std::runtime_error("SpectralGrid: FFTW planning failed");

    // Period 2L gives the lattice ξ_k = π k / L.
    std::vector<double> k2(M);
    for (int k = 0; k < M; ++k) {
        const int kk = k <= M / 2 ? k : k - M;
        const double xi = std::numbers::pi * kk / L;
        k2[k] = xi * xi;
    }
    xi2_.resize(n_);
    if (dim == 1) {
        xi2_ = k2;
    } else {
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) xi2_[static_cast<std::size_t>(i) * M + j] = k2[i] + k2[j];
    }
}

SpectralGrid::~SpectralGrid() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
    if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
    if (impl_->buffer) fftw_free(impl_->buffer);
}

std::vector<double> SpectralGrid::symbol(const OperatorParams& op) const {
    std::vector<double> m(n_);
    for (std::size_t i = 0; i < n_; ++i) m[i] = op.a * xi2_[i] + op.b * std::pow(xi2_[i], op.s);
    return m;
}

void SpectralGrid::forward(std::span<const double> in, std::span<cplx> out) {
    if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("SpectralGrid::forward: size mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
        impl_->buffer[i][0] = in[i];
        impl_->buffer[i][1] = 0.0;
    }
    fftw_execute(impl_->fwd);
    for (std::size_t i = 0; i < n_; ++i) out[i] = {impl_->buffer[i][0], impl_->buffer[i][1]};
}

double SpectralGrid::inverse(std::span<const cplx> in, std::span<double> out) {
    if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("SpectralGrid::inverse: size mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
        impl_->buffer[i][0] = in[i].real();
        impl_->buffer[i][1] = in[i].imag();
    }
    fftw_execute(impl_->bwd);
    const double scale = 1.0 / static_cast<double>(n_);
    double residue = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        out[i] = impl_->buffer[i][0] * scale;
        residue = std::max(residue, std::abs(impl_->buffer[i][1] * scale));
    }
    return residue;
}

GridField spectral_apply(const GridField& field, const OperatorParams& op) { return apply_impl(field, op, true); }

GridField spectral_apply_serial(const GridField& field, const OperatorParams& op) {
    return apply_impl(field, op, false);
}

}  // namespace blowup
