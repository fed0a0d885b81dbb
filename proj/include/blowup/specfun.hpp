#pragma once

#include <stdexcept>

namespace blowup {

/// Parameters of the mixed operator L = -a Δ + b (-Δ)^s on R^N.
struct OperatorParams {
    double a = 1.0;  ///< local diffusion weight, a >= 0
    double b = 1.0;  ///< nonlocal weight, b > 0
    double s = 0.5;  ///< fractional order, 0 < s < 1
    int N = 1;       ///< spatial dimension

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

/// Arguments of the Gauss hypergeometric function 2F1(a, b; c; z).
struct HyperParams {
    double a;
    double b;
    double c;
    double z;
};

/// Raised when a series or iteration does not reach tolerance within its cap.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ln Γ(x) for x > 0 (Lanczos, g = 7).
double log_gamma(double x);

/// ln|Γ(x)| for any real x that is not a pole; `sign` receives the sign of Γ(x).
double log_abs_gamma(double x, int& sign);

/// Γ(x) for real x away from the poles.
double gamma_fn(double x);

/// 1/Γ(x), returning exactly 0 at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);

/// |Γ(x)| for x in (-1, 0) through Γ(x) = Γ(x+1)/x.
double abs_gamma_negative(double x);

/// Digamma ψ(x) for real x away from the poles.
double digamma(double x);

/// 2F1(a, b; c; z) for real z < 1.
///
/// The defining series is used for |z| <= 1/2. Negative arguments are mapped by
/// the Pfaff transformation, and arguments in (1/2, 1) by the linear
/// transformation z -> 1 - z (including its logarithmic form when c - a - b is
/// an integer).
double gauss_2f1(const HyperParams& p);
double gauss_2f1(double a, double b, double c, double z);

/// 2F1(a, b; c; 1 - w) for w in (0, 1], with the complement passed exactly.
///
/// Needed where 1 - z is known in closed form (e.g. 1/(1+r^2)) and forming z
/// first would lose the digits that matter near z = 1.
double gauss_2f1_complement(double a, double b, double c, double w);

/// C_{N,s} = 2^{2s} Γ((N+2s)/2) / (π^{N/2} |Γ(-s)|).
double frac_constant(const OperatorParams& params);
double frac_constant(int N, double s);

/// c_β = ‖(1+|x|^2)^{-β}‖_{L^1(R^N)} = π^{N/2} Γ(β - N/2) / Γ(β); requires β > N/2.
double psi_mass(double beta, int N);

/// Surface area of the unit sphere S^{N-1} (2 for N = 1).
double unit_sphere_area(int N);

}  // namespace blowup
