#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace blowup {

enum class DatumKind { Gaussian, Bump, PowerTail, Tabulated, Constant };

/// Radial, continuous, bounded, nonnegative initial data.
struct InitialDatum {
    DatumKind kind = DatumKind::Constant;
    double amplitude = 0.0;
    double width = 1.0;     ///< gaussian width
    double radius = 1.0;    ///< bump support radius
    double exponent = 1.0;  ///< power_tail decay exponent q in A (1+r²)^{-q/2}
    std::vector<double> nodes;   ///< tabulated radii, starting at 0
    std::vector<double> values;  ///< tabulated samples
    std::shared_ptr<const std::function<double(double)>> interpolant;

    double operator()(double r) const;
    double sup() const;
    bool is_zero() const;
    /// Radius beyond which u0 vanishes; infinity when not compactly supported.
    double support_radius() const;
    /// Characteristic radii (widths, support edges, table nodes).
    std::vector<double> features() const;
    /// Typical length, used for box sizing in the simulator.
    double length_scale() const;
    InitialDatum scaled(double c) const;
    std::string describe() const;
    void validate() const;
};

InitialDatum gaussian_datum(double amplitude, double width);
/// amplitude * exp(1 - 1/(1 - (r/R)^2)) on r < R, zero outside.
InitialDatum bump_datum(double amplitude, double radius);
InitialDatum power_tail_datum(double amplitude, double exponent);
/// Monotone cubic (PCHIP) interpolation of samples; the last value is held beyond the table.
InitialDatum tabulated_datum(std::vector<double> nodes, std::vector<double> values);
InitialDatum constant_datum(double c);

const char* to_string(DatumKind k);

}  // namespace blowup
