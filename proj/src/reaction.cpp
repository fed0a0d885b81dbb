#include "blowup/reaction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "blowup/quadrature.hpp"

namespace blowup {

namespace {

// Effective growth exponent of f(z)/z over the decade ending at Z.
double decade_exponent(const ReactionSpec& spec, double Z) {
    const double hi = spec(Z) / Z;
    const double lo = spec(Z / 10.0) / (Z / 10.0);
    return std::log10(hi / lo);
}

void require_valid(const ReactionSpec& spec) {
    if (spec.kind == ReactionKind::Power) {
        if (!(spec.p > 1.0)) throw std::invalid_argument("reaction: power exponent must exceed 1");
        return;
    }
    const ReactionReport rep = validate_reaction(spec);
    if (!rep.pass()) throw std::invalid_argument("reaction '" + spec.name + "' fails validation: " + rep.failures[0]);
}

}  // namespace

ReactionSpec power_reaction(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("power_reaction: p must be positive");
    ReactionSpec spec;
    spec.kind = ReactionKind::Power;
    spec.p = p;
    spec.name = "power";
    spec.f = [p](double z) { return z <= 0.0 ? 0.0 : std::pow(z, p); };
    spec.declared_convex = p >= 1.0;
    return spec;
}

ReactionSpec custom_reaction(const std::string& name, std::function<double(double)> f, bool declared_convex) {
    ReactionSpec spec;
    spec.kind = ReactionKind::Custom;
    spec.p = 0.0;
    spec.name = name;
    spec.f = std::move(f);
    spec.declared_convex = declared_convex;
    return spec;
}

ReactionSpec custom_reaction(const std::string& name) {
    if (name == "z_log1p") return custom_reaction(name, [](double z) { return z * std::log1p(z); }, true);
    if (name == "z2_plus_z3") return custom_reaction(name, [](double z) { return z * z + z * z * z; }, true);
    if (name == "exp_minus_one") return custom_reaction(name, [](double z) { return std::expm1(z); }, true);
    throw std::invalid_argument("unknown custom reaction '" + name + "'");
}

std::vector<std::string> custom_reaction_names() { return {"z_log1p", "z2_plus_z3", "exp_minus_one"}; }

ReactionReport validate_reaction(const ReactionSpec& spec) {
    ReactionReport rep;
    if (!spec.f) {
        rep.failures.push_back("missing evaluator");
        return rep;
    }

    // i) f(0) = 0 and f > 0 on (0, ∞).
    rep.item_i = spec(0.0) == 0.0;
    for (int k = -60; k <= 60 && rep.item_i; ++k) {
        const double z = std::pow(10.0, k / 10.0);
        const double v = spec(z);
        if (!(v > 0.0)) rep.item_i = false;
    }
    if (!rep.item_i) rep.failures.push_back("i) f(0) = 0 and f(z) > 0 for z > 0");

    // ii) f(z)/z increases without bound, probed at 1e3 and 1e6.
    const double q3 = spec(1e3) / 1e3;
    const double q6 = spec(1e6) / 1e6;
    rep.item_ii = std::isnan(q6) ? false : (std::isinf(q6) || q6 > q3 * (1.0 + 1e-9));
    if (!rep.item_ii) rep.failures.push_back("ii) f(z)/z -> infinity");

    // iii) Osgood: ∫_1^∞ dz/f must converge. The probe integral must be finite
    // and the growth exponent of f(z)/z must not fade out across decades;
    // a logarithmic factor alone (exponent ~ 1/ln z) is rejected.
    {
        const Integrand inv = [&](double u) {
            const double z = std::exp(u);
            const double v = spec(z);
            return std::isfinite(v) ? z / v : 0.0;
        };
        const QuadResult probe = integrate(inv, 0.0, std::log(1e8), {1e-12, 1e-10, 2000});
        bool ok = probe.converged && std::isfinite(probe.value);
        const double v12 = spec(1e12);
        if (ok && std::isfinite(v12)) {
            const double e6 = decade_exponent(spec, 1e6);
            const double e12 = decade_exponent(spec, 1e12);
            ok = std::isfinite(e12) && e12 > 0.01 && e12 >= 0.8 * e6;
        }
        rep.item_iii = ok;
        if (!ok) rep.failures.push_back("iii) integral of 1/f over [1, infinity) is finite");
    }

    // Convexity on deterministic random pairs.
    {
        std::mt19937_64 rng(20240611);
        std::uniform_real_distribution<double> expo(-3.0, 3.0);
        rep.convex = true;
        for (int i = 0; i < 400 && rep.convex; ++i) {
            const double x = std::pow(10.0, expo(rng));
            const double y = std::pow(10.0, expo(rng));
            const double lhs = spec(0.5 * (x + y));
            const double rhs = 0.5 * (spec(x) + spec(y));
            if (lhs > rhs + 1e-12 * std::abs(rhs)) rep.convex = false;
        }
        if (!spec.declared_convex) rep.convex = false;
        if (!rep.convex) rep.failures.push_back("f is convex (midpoint test)");
    }

    // Local Lipschitz continuity: difference quotients on [0, 100] stay finite.
    {
        rep.lipschitz = true;
        for (int i = 0; i < 1000 && rep.lipschitz; ++i) {
            const double z = 0.1 * i;
            const double dq = (spec(z + 1e-3) - spec(z)) / 1e-3;
            if (!std::isfinite(dq)) rep.lipschitz = false;
        }
        if (!rep.lipschitz) rep.failures.push_back("f is locally Lipschitz (difference quotients)");
        rep.caveats.push_back(
            "local Lipschitz continuity is checked only through bounded difference quotients on [0, 100]");
    }
    return rep;
}

double s_f(const ReactionSpec& spec, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("s_f: lambda must be nonnegative");
    require_valid(spec);
    if (spec.kind == ReactionKind::Power) return lambda == 0.0 ? 0.0 : std::pow(lambda, 1.0 / (spec.p - 1.0));

    auto ratio = [&](double z) { return spec(z) / z; };
    double lo = 1e-12;
    if (ratio(lo) > lambda) return 0.0;
    double hi = 1.0;
    while (!(ratio(hi) > lambda)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e30) throw ThresholdError("s_f: bracket exceeded 1e30; reaction not superlinear in practice");
    }
    while (hi - lo > 1e-10 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi) {
        const double mid = 0.5 * (lo + hi);
        if (ratio(mid) > lambda)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double osgood_blowup_bound(const ReactionSpec& spec, double lambda, double phi0) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("osgood_blowup_bound: lambda must be nonnegative");
    if (!(phi0 > 0.0) || !std::isfinite(phi0)) throw ThresholdError("osgood_blowup_bound: phi0 must be positive");
    if (lambda > 0.0) {
        const double threshold = s_f(spec, lambda);
        if (!(phi0 > threshold * (1.0 + 1e-12)))
            throw ThresholdError("osgood_blowup_bound: phi0 must exceed s_f(lambda) = " + std::to_string(threshold));
    } else {
        require_valid(spec);
    }
    // z = φ0 e^u maps (φ0, ∞) to (0, ∞).
    const Integrand g = [&](double u) {
        const double z = phi0 * std::exp(u);
        if (!std::isfinite(z)) return 0.0;
        const double denom = spec(z) - lambda * z;
        if (!std::isfinite(denom)) return 0.0;
        return z / denom;
    };
    const QuadResult res = integrate_semi_infinite(g, 0.0, 1.0, {1e-14, 1e-11, 4000});
    if (!res.converged || !std::isfinite(res.value))
        throw QuadratureError("osgood_blowup_bound: quadrature did not converge");
    return res.value;
}

const char* to_string(OdeTermination t) {
    switch (t) {
        case OdeTermination::ReachedTmax: return "reached_tmax";
        case OdeTermination::Blowup: return "blowup_detected";
        case OdeTermination::StepUnderflow: return "step_underflow";
    }
    return "unknown";
}

ComparisonTrajectory integrate_comparison(const ReactionSpec& spec, double lambda, double phi0, double t_max,
                                          const ComparisonOptions& opts) {
    if (!(phi0 > 0.0)) throw std::invalid_argument("integrate_comparison: phi0 must be positive");
    if (!(t_max > 0.0)) throw std::invalid_argument("integrate_comparison: t_max must be positive");
    require_valid(spec);
    auto rhs = [&](double y) { return spec(y) - lambda * y; };

    // Dormand-Prince 5(4) tableau; the right-hand side is autonomous.
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    ComparisonTrajectory out;
    double t = 0.0;
    double y = phi0;
    out.t.push_back(t);
    out.phi.push_back(y);
    const double f0 = std::abs(rhs(y));
    double h = std::min(t_max, f0 > 0.0 ? 1e-3 * std::max(y, 1e-300) / f0 : t_max * 1e-3);
    h = std::max(h, 1e-10);
    double k1 = rhs(y);
    while (t < t_max) {
        h = std::min(h, t_max - t);
        // The floor is relative to the local time scale y / |Φ'|, which shrinks
        // like y^{1-p} on the way to blow-up.
        const double time_scale = std::abs(k1) > 0.0 ? std::max(y, 1e-300) / std::abs(k1) : t_max;
        if (t + h == t && k1 > 0.0 && y > phi0) {
            // Φ outruns the resolution of t: for p > 2 this happens before the threshold.
            out.termination = OdeTermination::Blowup;
            out.blowup_time = t;
            out.blowup_estimate = t + osgood_blowup_bound(spec, lambda, y);
            return out;
        }
        if (h < opts.step_floor * std::min(time_scale, t_max) || t + h == t) {
            out.termination = OdeTermination::StepUnderflow;
            return out;
        }
        const double k2 = rhs(y + h * a21 * k1);
        const double k3 = rhs(y + h * (a31 * k1 + a32 * k2));
        const double k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = rhs(y_new);
        const double err = std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
        const double scale = opts.abs_tol + opts.rel_tol * std::max(std::abs(y), std::abs(y_new));
        const double ratio = std::isfinite(err) && std::isfinite(y_new) ? err / scale : 1e10;
        if (ratio <= 1.0) {
            t += h;
            y = y_new;
            k1 = k7;
            out.t.push_back(t);
            out.phi.push_back(y);
            if (y > opts.blowup_threshold) {
                out.termination = OdeTermination::Blowup;
                out.blowup_time = t;
                out.blowup_estimate = t + osgood_blowup_bound(spec, lambda, y);
                return out;
            }
        }
        const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
        h *= factor;
    }
    out.termination = OdeTermination::ReachedTmax;
    return out;
}

}  // namespace blowup
