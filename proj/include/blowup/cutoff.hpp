#pragma once

#include "blowup/profile.hpp"

namespace blowup {

/// Smooth step χ on [0, ∞): χ ≡ 1 on [0, 1], χ ≡ 0 on [2, ∞), built from the
/// exp(-1/t) mollifier. Derivatives are exact.
double cutoff_base(double t);
double cutoff_base_d1(double t);
double cutoff_base_d2(double t);

/// χ_R(x) = χ(|x|/R) with radial derivative and Laplacian evaluators.
struct Cutoff {
    double R = 1.0;
    double C1 = 0.0;  ///< sup |χ'| of the base profile
    double C2 = 0.0;  ///< sup |χ''| of the base profile

    double value(double r) const { return cutoff_base(r / R); }
    /// d/dr χ_R; |∇χ_R| is its absolute value.
    double radial_derivative(double r) const { return cutoff_base_d1(r / R) / R; }
    double gradient_norm(double r) const;
    double laplacian(double r, int N) const;
    /// Bound constant with |∇χ_R| <= C3 / R.
    double C3() const { return C1; }
    /// Bound constant with |Δχ_R| <= C4 / R^2 in dimension N.
    double C4(int N) const { return C2 + (N - 1) * C1; }
    RadialProfile profile() const;
};

Cutoff make_cutoff(double R);

}  // namespace blowup
