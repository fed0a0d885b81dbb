#pragma once

#include <span>

#include "blowup/cutoff.hpp"
#include "blowup/profile.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/specfun.hpp"

namespace blowup {

struct PvEstimate {
    double value = 0.0;
    double error = 0.0;  ///< absolute error estimate
};

/// Absolute error estimate above which the pointwise operators throw.
inline constexpr double kPvTolerance = 1e-6;

/// (-Δ)^s u at the point x e_1 (a signed coordinate when N = 1, a radius otherwise).
PvEstimate frac_laplacian_pv_estimate(const RadialProfile& u, double x, const OperatorParams& op);
double frac_laplacian_pv(const RadialProfile& u, double x, const OperatorParams& op);
/// Point form; x must have N components.
double frac_laplacian_pv(const RadialProfile& u, std::span<const double> x, const OperatorParams& op);

/// L u = -aΔu + b(-Δ)^s u, with Δu from finite differences of the slope.
double mixed_operator_pv(const RadialProfile& u, double x, const OperatorParams& op);

/// B(f, g)(x) = C_{N,s} ∫ (f(x) - f(y))(g(x) - g(y)) / |x - y|^{N+2s} dy.
PvEstimate bilinear_form_estimate(const RadialProfile& f, const RadialProfile& g, double x,
                                  const OperatorParams& op);
double bilinear_form(const RadialProfile& f, const RadialProfile& g, double x, const OperatorParams& op);
double bilinear_form(const RadialProfile& f, const RadialProfile& g, std::span<const double> x,
                     const OperatorParams& op);

struct TailTerms {
    double local_tail = 0.0;
    double nonlocal_tail = 0.0;
};

/// The two cutoff remainders that vanish as R -> ∞:
///   local    = ∫ κ u Δχ_R + 2 ∫ u ∇κ·∇χ_R
///   nonlocal = ∫ u κ (-Δ)^s χ_R + ∫ u B(χ_R, κ)
TailTerms tail_terms(const RadialProfile& kappa, const RadialProfile& u, double R, const OperatorParams& op);

struct IbpReport {
    double residual = 0.0;  ///< |∫ v (-Δ)^s u - ∫ u (-Δ)^s v|
    double scale = 0.0;     ///< |∫ v (-Δ)^s u| + |∫ u (-Δ)^s v|
};

/// Integration-by-parts residual for bounded u and compactly supported v.
IbpReport ibp_report(const RadialProfile& u, const RadialProfile& v, const OperatorParams& op);
double ibp_check(const RadialProfile& u, const RadialProfile& v, const OperatorParams& op);

}  // namespace blowup
