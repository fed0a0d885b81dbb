#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace blowup {

/// A function on R^N of the form u(y) = U(|y - c e_1|), sampled through a
/// closed-form evaluator of the radial part U.
///
/// The centre offset c is honoured only in one dimension; in N >= 2 the
/// operators assume c = 0 and use the radial reduction.
struct RadialProfile {
    std::function<double(double)> value;       ///< U(r), r >= 0
    std::function<double(double)> derivative;  ///< U'(r); empty means centred finite differences
    double asymptote = 0.0;                    ///< lim U(r) as r -> ∞
    /// |U(r) - asymptote| <= C (1+r)^{-decay_exponent}; infinity for compact support.
    double decay_exponent = std::numeric_limits<double>::infinity();
    double support_radius = std::numeric_limits<double>::infinity();  ///< U == asymptote beyond this
    double length_scale = 1.0;                 ///< smallest feature width, sets quadrature radii
    std::vector<double> breakpoints;           ///< radii where U changes character
    double center = 0.0;                       ///< offset along e_1 (N = 1 only)
    std::string name;

    double operator()(double r) const { return value(r); }
    /// u at the signed coordinate y of the real line (N = 1).
    double at_line(double y) const;
    double slope(double r) const;
};

/// Checks finiteness and the declared algebraic decay on deterministic samples.
/// Throws std::domain_error when the decay is too weak for the tail space.
void validate_profile(const RadialProfile& u);

RadialProfile constant_profile(double c);
/// (1 + r^2)^{-β}
RadialProfile psi_profile(double beta);
/// amplitude * exp(-(r/width)^2)
RadialProfile gaussian_profile(double amplitude, double width);
RadialProfile product(const RadialProfile& f, const RadialProfile& g);
RadialProfile scaled(const RadialProfile& f, double factor);
/// The same profile with its centre moved to c (N = 1).
RadialProfile shifted(const RadialProfile& f, double c);

}  // namespace blowup
