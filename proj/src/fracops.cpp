#include "blowup/fracops.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace blowup {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Inner-ball radius relative to the profile length scale.
constexpr double kInnerFraction = 1e-3;
// Far-field truncation: the integrand envelope has fallen by e^{-34} ≈ 2e-15.
constexpr double kFarDecades = 34.0;

// Second-difference kernel along spheres around x.
struct Kernel {
    std::function<double(double)> D;  // N = 1: signed coordinate y; N >= 2: radius |y|
    double x = 0.0;                   // signed coordinate (N = 1) or radius
    int N = 1;
    double s = 0.5;
    double D_inf = 0.0;          // limit of D at infinity
    double decay = kInf;         // algebraic decay of D - D_inf
    double reach = kInf;         // D == D_inf once |y - center| exceeds this
    double center = 0.0;
    double length_scale = 1.0;
    std::vector<double> features;  // radii about the centre
};

double angular_normaliser(int N) {
    if (N == 2) return std::numbers::pi;
    return std::sqrt(std::numbers::pi) * std::exp(log_gamma(0.5 * (N - 1)) - log_gamma(0.5 * N));
}

// Mean of D over the sphere of radius rho around x.
double sphere_mean(const Kernel& k, double rho) {
    if (k.N == 1) return 0.5 * (k.D(k.x + rho) + k.D(k.x - rho));
    const double r = k.x;
    if (r == 0.0 || rho <= 1e-12 * r || r <= 1e-12 * rho) return k.D(std::max(r, rho) == r ? r : rho);

    const QuadOptions inner{1e-17, 1e-12, 300};
    if (k.N == 3) {
        const double lo = std::abs(r - rho);
        const double hi = r + rho;
        const Integrand g = [&](double q) { return q * k.D(q); };
        const QuadResult res = integrate(g, lo, hi, inner, k.features);
        return res.value / (2.0 * r * rho);
    }
    std::vector<double> cuts;
    for (double b : k.features) {
        const double c = (b * b - r * r - rho * rho) / (2.0 * r * rho);
        if (c > -1.0 && c < 1.0) cuts.push_back(std::acos(c));
    }
    const int power = k.N - 2;
    const Integrand g = [&](double th) {
        const double q2 = r * r + rho * rho + 2.0 * r * rho * std::cos(th);
        const double w = power == 0 ? 1.0 : std::pow(std::sin(th), power);
        return w * k.D(std::sqrt(std::max(0.0, q2)));
    };
    const QuadResult res = integrate(g, 0.0, std::numbers::pi, inner, cuts);
    return res.value / angular_normaliser(k.N);
}

// ∫_0^∞ ρ^{-1-2s} S(ρ) dρ with S the sphere mean of D.
PvEstimate singular_integral(const Kernel& k) {
    const double s = k.s;
    const double rel = std::abs(k.x - (k.N == 1 ? k.center : 0.0));
    const double ell = k.length_scale;
    const double delta = kInnerFraction * ell;
    double max_feature = ell;
    for (double b : k.features) max_feature = std::max(max_feature, b);

    double P = std::isfinite(k.reach) ? rel + k.reach : rel + 2.0 * max_feature + 10.0 * ell;
    P = std::max(P, 10.0 * delta);

    std::vector<double> rho_cuts;
    auto add_cut = [&](double b) {
        rho_cuts.push_back(std::abs(rel - b));
        rho_cuts.push_back(rel + b);
    };
    add_cut(0.0);
    for (double b : k.features) add_cut(b);
    if (std::isfinite(k.reach)) add_cut(k.reach);
    std::vector<double> log_cuts;
    for (double c : rho_cuts)
        if (c > delta && c < P) log_cuts.push_back(std::log(c));

    PvEstimate out;
    // Inner ball: the odd terms cancel, so S(ρ) = c2 ρ^2 + c4 ρ^4 + O(ρ^6);
    // fit c2, c4 from ρ = δ, δ/2 and integrate the polynomial exactly.
    const double q1 = sphere_mean(k, delta) / (delta * delta);
    const double q2 = sphere_mean(k, 0.5 * delta) / (0.25 * delta * delta);
    const double c4 = (q1 - q2) / (0.75 * delta * delta);
    const double c2 = q1 - c4 * delta * delta;
    const double quad_term = c2 * std::pow(delta, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    const double quartic_term = c4 * std::pow(delta, 4.0 - 2.0 * s) / (4.0 - 2.0 * s);
    out.value += quad_term + quartic_term;
    out.error += 1e-2 * std::abs(quartic_term) + 1e-12 * std::abs(quad_term);

    const Integrand mid = [&](double v) {
        const double rho = std::exp(v);
        return std::pow(rho, -2.0 * s) * sphere_mean(k, rho);
    };
    const QuadResult mid_res = integrate(mid, std::log(delta), std::log(P), {1e-14, 1e-10, 3000}, log_cuts);
    out.value += mid_res.value;
    out.error += mid_res.error;

    // Far field: the constant part is exact; the remainder decays algebraically.
    out.value += k.D_inf * std::pow(P, -2.0 * s) / (2.0 * s);
    if (!std::isfinite(k.reach)) {
        const double rate = 2.0 * s + k.decay;
        const double u_max = std::min(700.0, kFarDecades / rate);
        const Integrand far = [&](double u) {
            const double rho = P * std::exp(u);
            return std::pow(rho, -2.0 * s) * (sphere_mean(k, rho) - k.D_inf);
        };
        const QuadResult far_res = integrate(far, 0.0, u_max, {1e-15, 1e-10, 2000});
        out.value += far_res.value;
        out.error += far_res.error + std::abs(far(u_max)) / rate;
    }
    return out;
}

void require_radial(const RadialProfile& u, const OperatorParams& op) {
    if (op.N >= 2 && u.center != 0.0)
        throw std::invalid_argument("profile '" + u.name + "' must be centred at the origin when N >= 2");
}

double coordinate(std::span<const double> x, const OperatorParams& op) {
    if (x.size() != static_cast<std::size_t>(op.N))
        throw std::invalid_argument("point dimension " + std::to_string(x.size()) + " does not match N = " +
                                    std::to_string(op.N));
    if (op.N == 1) return x[0];
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    return std::sqrt(r2);
}

// u at the sample position used by the kernels: signed coordinate or radius.
double sample(const RadialProfile& u, double y, int N) { return N == 1 ? u.at_line(y) : u(y); }

void check_error(const PvEstimate& e, const char* what) {
    if (!(e.error <= kPvTolerance) || !std::isfinite(e.value))
        throw QuadratureError(std::string(what) + ": error estimate " + std::to_string(e.error) +
                              " exceeds tolerance");
}

double reach_of(const RadialProfile& u) { return std::isfinite(u.decay_exponent) ? kInf : u.support_radius; }

// Kernel D(y) = (χ(y) - χ(x))(κ(y) - 2κ(x)), whose sphere integral gives
// κ(x)(-Δ)^s χ(x) + B(χ, κ)(x).
double cutoff_remainder(const RadialProfile& chi, const RadialProfile& kappa, double r, const OperatorParams& op) {
    Kernel k;
    const double cx = chi(r);
    const double kx = kappa(r);
    k.D = [&](double y) { return (chi(std::abs(y)) - cx) * (kappa(std::abs(y)) - 2.0 * kx); };
    k.x = r;
    k.N = op.N;
    k.s = op.s;
    k.D_inf = 2.0 * cx * kx;
    k.decay = kappa.decay_exponent;
    k.reach = cx == 0.0 ? chi.support_radius : kInf;
    k.length_scale = std::min(chi.length_scale, kappa.length_scale);
    k.features = chi.breakpoints;
    k.features.insert(k.features.end(), kappa.breakpoints.begin(), kappa.breakpoints.end());
    const double scale = frac_constant(op) * unit_sphere_area(op.N);
    PvEstimate e = singular_integral(k);
    e.value *= scale;
    e.error *= scale;
    check_error(e, "tail_terms");
    return e.value;
}

}  // namespace

PvEstimate frac_laplacian_pv_estimate(const RadialProfile& u, double x, const OperatorParams& op) {
    op.validate();
    validate_profile(u);
    require_radial(u, op);
    const int N = op.N;
    if (N >= 2) x = std::abs(x);
    const double ux = sample(u, x, N);

    Kernel k;
    k.D = [&](double y) { return sample(u, y, N) - ux; };
    k.x = x;
    k.N = N;
    k.s = op.s;
    k.D_inf = u.asymptote - ux;
    k.decay = u.decay_exponent;
    k.reach = reach_of(u);
    k.center = u.center;
    k.length_scale = u.length_scale;
    k.features = u.breakpoints;

    const double scale = frac_constant(op) * unit_sphere_area(N);
    PvEstimate e = singular_integral(k);
    e.value *= -scale;
    e.error *= scale;
    return e;
}

double frac_laplacian_pv(const RadialProfile& u, double x, const OperatorParams& op) {
    const PvEstimate e = frac_laplacian_pv_estimate(u, x, op);
    check_error(e, "frac_laplacian_pv");
    return e.value;
}

double frac_laplacian_pv(const RadialProfile& u, std::span<const double> x, const OperatorParams& op) {
    return frac_laplacian_pv(u, coordinate(x, op), op);
}

double mixed_operator_pv(const RadialProfile& u, double x, const OperatorParams& op) {
    const double frac = frac_laplacian_pv(u, x, op);
    if (op.a == 0.0) return op.b * frac;
    const double h = 1e-3 * u.length_scale;
    double lap;
    if (op.N == 1) {
        auto f = [&](double y) { return u.at_line(y); };
        lap = (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
    } else {
        const double r = std::abs(x);
        auto f = [&](double y) { return u(std::abs(y)); };
        const double second =
            (-f(r + 2 * h) + 16 * f(r + h) - 30 * f(r) + 16 * f(r - h) - f(r - 2 * h)) / (12 * h * h);
        lap = r == 0.0 ? op.N * second : second + (op.N - 1) * u.slope(r) / r;
    }
    return -op.a * lap + op.b * frac;
}

PvEstimate bilinear_form_estimate(const RadialProfile& f, const RadialProfile& g, double x,
                                  const OperatorParams& op) {
    op.validate();
    validate_profile(f);
    validate_profile(g);
    require_radial(f, op);
    require_radial(g, op);
    if (f.center != g.center) throw std::invalid_argument("bilinear_form: profiles must share a centre");
    const int N = op.N;
    if (N >= 2) x = std::abs(x);
    const double fx = sample(f, x, N);
    const double gx = sample(g, x, N);

    Kernel k;
    k.D = [&](double y) { return (fx - sample(f, y, N)) * (gx - sample(g, y, N)); };
    k.x = x;
    k.N = N;
    k.s = op.s;
    k.D_inf = (fx - f.asymptote) * (gx - g.asymptote);
    k.decay = std::min(f.decay_exponent, g.decay_exponent);
    k.reach = std::max(reach_of(f), reach_of(g));
    k.center = f.center;
    k.length_scale = std::min(f.length_scale, g.length_scale);
    k.features = f.breakpoints;
    k.features.insert(k.features.end(), g.breakpoints.begin(), g.breakpoints.end());

    const double scale = frac_constant(op) * unit_sphere_area(N);
    PvEstimate e = singular_integral(k);
    e.value *= scale;
    e.error *= scale;
    return e;
}

double bilinear_form(const RadialProfile& f, const RadialProfile& g, double x, const OperatorParams& op) {
    const PvEstimate e = bilinear_form_estimate(f, g, x, op);
    check_error(e, "bilinear_form");
    return e.value;
}

double bilinear_form(const RadialProfile& f, const RadialProfile& g, std::span<const double> x,
                     const OperatorParams& op) {
    return bilinear_form(f, g, coordinate(x, op), op);
}

TailTerms tail_terms(const RadialProfile& kappa, const RadialProfile& u, double R, const OperatorParams& op) {
    op.validate();
    validate_profile(kappa);
    if (kappa.center != 0.0 || u.center != 0.0)
        throw std::invalid_argument("tail_terms: profiles must be centred at the origin");
    const Cutoff cut = make_cutoff(R);
    const RadialProfile chi = cut.profile();
    const int N = op.N;
    const double sphere = unit_sphere_area(N);
    const QuadOptions opts{1e-16, 1e-9, 2000};
    const std::vector<double> annulus_cuts{1.25 * R, 1.5 * R, 1.75 * R};

    TailTerms out;
    const Integrand local = [&](double r) {
        const double ur = u(r);
        if (ur == 0.0) return 0.0;
        return std::pow(r, N - 1) * ur *
               (kappa(r) * cut.laplacian(r, N) + 2.0 * kappa.slope(r) * cut.radial_derivative(r));
    };
    out.local_tail = sphere * integrate(local, R, 2.0 * R, opts, annulus_cuts).value;

    const Integrand nonlocal = [&](double r) {
        const double ur = u(r);
        if (ur == 0.0) return 0.0;
        return std::pow(r, N - 1) * ur * cutoff_remainder(chi, kappa, r, op);
    };
    std::vector<double> cuts{R, 1.5 * R};
    for (double b : kappa.breakpoints) cuts.push_back(b);
    QuadResult inner = integrate(nonlocal, 0.0, 2.0 * R, opts, cuts);
    const double u_max = std::min(700.0, 21.0 / (2.0 * op.s));
    inner += integrate_log_range(nonlocal, 2.0 * R, u_max, opts);
    out.nonlocal_tail = sphere * inner.value;
    return out;
}

IbpReport ibp_report(const RadialProfile& u, const RadialProfile& v, const OperatorParams& op) {
    op.validate();
    if (std::isfinite(v.decay_exponent) || !std::isfinite(v.support_radius))
        throw std::invalid_argument("ibp_check: v must be compactly supported");
    if (u.center != 0.0 || v.center != 0.0)
        throw std::invalid_argument("ibp_check: profiles must be centred at the origin");
    const int N = op.N;
    const double sphere = unit_sphere_area(N);
    const double Rv = v.support_radius;
    const QuadOptions opts{1e-15, 1e-9, 2000};
    std::vector<double> cuts = v.breakpoints;
    cuts.insert(cuts.end(), u.breakpoints.begin(), u.breakpoints.end());

    const Integrand first = [&](double r) {
        const double vr = v(r);
        if (vr == 0.0) return 0.0;
        return std::pow(r, N - 1) * vr * frac_laplacian_pv(u, r, op);
    };
    const Integrand second = [&](double r) {
        const double ur = u(r);
        if (ur == 0.0) return 0.0;
        return std::pow(r, N - 1) * ur * frac_laplacian_pv(v, r, op);
    };
    const double lhs = sphere * integrate(first, 0.0, Rv, opts, cuts).value;
    const double u_decay = std::isfinite(u.decay_exponent) && u.asymptote == 0.0 ? u.decay_exponent : 0.0;
    const double u_max = std::min(700.0, 21.0 / (2.0 * op.s + u_decay));
    // The algebraic decay bound only bites beyond u's own features.
    double R1 = std::max(Rv, 10.0 * u.length_scale);
    for (double b : u.breakpoints) R1 = std::max(R1, 3.0 * b);
    QuadResult rhs_res = integrate(second, 0.0, R1, opts, cuts);
    rhs_res += integrate_log_range(second, R1, u_max, opts);
    const double rhs = sphere * rhs_res.value;
    return {std::abs(lhs - rhs), std::abs(lhs) + std::abs(rhs)};
}

double ibp_check(const RadialProfile& u, const RadialProfile& v, const OperatorParams& op) {
    return ibp_report(u, v, op).residual;
}

}  // namespace blowup
