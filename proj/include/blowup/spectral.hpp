#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "blowup/specfun.hpp"

namespace blowup {

/// Samples on the uniform periodic grid of [-L, L)^dim, row-major with the
/// last axis fastest.
struct GridField {
    double L = 1.0;
    int M = 2;
    int dim = 1;
    std::vector<double> data;

    double h() const { return 2.0 * L / M; }
    std::size_t size() const { return data.size(); }
    double coord(int j) const { return -L + j * h(); }
    /// Distance from the origin of grid point `index`.
    double radius(std::size_t index) const;
    void validate() const;
};

/// Allocates a zero field after checking the shape.
GridField make_grid(double L, int M, int dim);
/// Samples a radial function r -> U(r) on the grid.
GridField sample_radial(double L, int M, int dim, const std::function<double(double)>& U);

/// FFT workspace for one grid shape. Not safe for concurrent use; create one
/// per thread or run.
class SpectralGrid {
public:
    using cplx = std::complex<double>;

    SpectralGrid(double L, int M, int dim);
    ~SpectralGrid();
    SpectralGrid(const SpectralGrid&) = delete;
    SpectralGrid& operator=(const SpectralGrid&) = delete;

    std::size_t size() const { return n_; }
    /// |ξ|^2 on the discrete frequency lattice, in transform order.
    std::span<const double> xi_squared() const { return xi2_; }
    /// Symbol a|ξ|^2 + b|ξ|^{2s} in transform order.
    std::vector<double> symbol(const OperatorParams& op) const;

    void forward(std::span<const double> in, std::span<cplx> out);
    /// Inverse transform (normalised); returns max |imaginary part| of the result.
    double inverse(std::span<const cplx> in, std::span<double> out);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::size_t n_;
    std::vector<double> xi2_;
};

/// L u via the Fourier multiplier a|ξ|^2 + b|ξ|^{2s}.
GridField spectral_apply(const GridField& field, const OperatorParams& op);
/// Uses the serial reference kernel for the multiplier.
GridField spectral_apply_serial(const GridField& field, const OperatorParams& op);

}  // namespace blowup
