#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "blowup/profile.hpp"
#include "blowup/specfun.hpp"

namespace blowup {

struct KaplanParams {
    double beta = 1.5;
    double epsilon = 1.0;
    OperatorParams op;
    void validate() const;
};

/// Constants of the explicit Kaplan construction at ε = 1.
struct KaplanBounds {
    double beta = 0.0;
    double eps = 1.0;
    double c_beta = 0.0;
    double A = 0.0;       ///< sup |Δκ₁|
    double B = 0.0;       ///< sup |(-Δ)^s κ₁|
    double R0 = 0.0;      ///< -(-Δ)^s κ₁ > 0 for r > R0
    double eta1 = 0.0;    ///< min of (1+r²)^{N/2+s} (-(-Δ)^s κ₁) beyond R0
    double eta2 = 0.0;    ///< max of the same
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda0 = 0.0;
    double theta = 0.0;   ///< (-Δ)^s Ψ_β(0)
};

class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EnvelopeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double psi_beta(double r, double beta);
double psi_beta(std::span<const double> x, double beta);

/// κ_ε(x) = ε^{N/2} / c_β · (1 + ε|x|²)^{-β}
double kappa_eps(double r, const KaplanParams& kp);
double kappa_eps(std::span<const double> x, const KaplanParams& kp);
/// Radial profile of κ_ε for the quadrature operators.
RadialProfile kappa_profile(const KaplanParams& kp);

double kappa1_derivative(double r, double beta, int N);
double laplacian_kappa1(double r, double beta, int N);

/// (-Δ)^s Ψ_β(r) = θ ₂F₁(-s, β+s; N/2; r²/(1+r²)) (1+r²)^{-β-s}.
double closed_form_frac_psi(double r, double beta, const OperatorParams& op, double theta);
/// Untransformed form θ ₂F₁(N/2+s, β+s; N/2; -r²).
double closed_form_frac_psi_direct(double r, double beta, const OperatorParams& op, double theta);
/// (-Δ)^s κ₁(r) = closed_form_frac_psi / c_β.
double frac_laplacian_kappa1(double r, double beta, const OperatorParams& op, double theta);

/// θ from principal-value quadrature at the origin, cross-checked at five radii.
double calibrate_theta(double beta, const OperatorParams& op);
/// θ from the spectral operator on a large periodic box (N = 1 or 2).
double calibrate_theta_spectral(double beta, const OperatorParams& op);
/// Radii used for the calibration cross-check.
std::vector<double> theta_check_radii();

KaplanBounds compute_bounds(const KaplanParams& kp0);

struct SubsolutionReport {
    double min_margin = 0.0;           ///< min over samples of m(r)
    double min_relative_margin = 0.0;  ///< min over samples of m(r) / κ_ε(r)
    double worst_radius = 0.0;         ///< sample attaining the relative minimum
    bool pass = false;
};

/// m(r) = aΔκ_ε - b(-Δ)^s κ_ε + λκ_ε evaluated in closed form; passes when
/// m(r) >= -1e-10 κ_ε(r) at every sample.
SubsolutionReport verify_subsolution(const KaplanParams& kp, double lambda, std::span<const double> radii,
                                     const KaplanBounds& bounds);
/// `count` radii for κ_ε: half uniform on [0, 10/√ε], half log-spaced out to 1e6/√ε.
std::vector<double> verification_radii(double epsilon, int count = 2000);

}  // namespace blowup
