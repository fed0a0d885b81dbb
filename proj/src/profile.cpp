#include "blowup/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blowup {

double RadialProfile::at_line(double y) const { return value(std::abs(y - center)); }

double RadialProfile::slope(double r) const {
    if (derivative) return derivative(r);
    const double h = 1e-5 * std::max(1.0, length_scale);
    if (r < h) return (value(r + h) - value(std::abs(r - h))) / (2.0 * h);
    return (value(r + h) - value(r - h)) / (2.0 * h);
}

void validate_profile(const RadialProfile& u) {
    if (!u.value) throw std::invalid_argument("profile: missing evaluator");
    if (!(u.decay_exponent > 0.0)) throw std::domain_error("profile: decay too weak for the tail space");
    if (!(u.length_scale > 0.0)) throw std::invalid_argument("profile: length scale must be positive");
    double near_const = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double r = 0.05 * i;
        const double v = u(r);
        if (!std::isfinite(v)) throw std::domain_error("profile '" + u.name + "' is not finite at r = " +
                                                       std::to_string(r));
        if (std::isfinite(u.decay_exponent))
            near_const = std::max(near_const, std::abs(v - u.asymptote) * std::pow(1.0 + r, u.decay_exponent));
    }
    if (!std::isfinite(u.decay_exponent)) {
        const double edge = std::isfinite(u.support_radius) ? u.support_radius : 0.0;
        for (double r = edge * 1.01 + 1e-9; r < edge * 100.0 + 10.0; r *= 1.7)
            if (std::abs(u(r) - u.asymptote) > 1e-14 * (1.0 + std::abs(u.asymptote)))
                throw std::domain_error("profile '" + u.name + "' is not constant outside its support");
        return;
    }
    for (double r = 100.0; r <= 1e6; r *= 10.0) {
        const double v = u(r);
        if (!std::isfinite(v)) throw std::domain_error("profile '" + u.name + "' is not finite in the far field");
        const double weighted = std::abs(v - u.asymptote) * std::pow(1.0 + r, u.decay_exponent);
        if (weighted > 10.0 * near_const + 1e-300)
            throw std::domain_error("profile '" + u.name + "' decays slower than the declared exponent");
    }
}

RadialProfile constant_profile(double c) {
    RadialProfile p;
    p.value = [c](double) { return c; };
    p.derivative = [](double) { return 0.0; };
    p.asymptote = c;
    p.support_radius = 0.0;
    p.name = "constant";
    return p;
}

RadialProfile psi_profile(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("psi_profile: beta must be positive");
    RadialProfile p;
    p.value = [beta](double r) { return std::pow(1.0 + r * r, -beta); };
    p.derivative = [beta](double r) { return -2.0 * beta * r * std::pow(1.0 + r * r, -beta - 1.0); };
    p.decay_exponent = 2.0 * beta;
    p.breakpoints = {1.0};
    p.name = "psi_" + std::to_string(beta);
    return p;
}

RadialProfile gaussian_profile(double amplitude, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_profile: width must be positive");
    RadialProfile p;
    p.value = [=](double r) { return amplitude * std::exp(-(r / width) * (r / width)); };
    p.derivative = [=](double r) {
        return -2.0 * r / (width * width) * amplitude * std::exp(-(r / width) * (r / width));
    };
    // Faster than any power; 40 keeps the far-field truncation short.
    p.decay_exponent = 40.0;
    p.length_scale = width;
    p.breakpoints = {width, 3.0 * width};
    p.name = "gaussian";
    return p;
}

RadialProfile product(const RadialProfile& f, const RadialProfile& g) {
    if (f.center != g.center) throw std::invalid_argument("product: profiles must share a centre");
    RadialProfile p;
    p.value = [f, g](double r) { return f(r) * g(r); };
    p.derivative = [f, g](double r) { return f.slope(r) * g(r) + f(r) * g.slope(r); };
    p.asymptote = f.asymptote * g.asymptote;
    constexpr double inf = std::numeric_limits<double>::infinity();
    const bool f_compact = !std::isfinite(f.decay_exponent);
    const bool g_compact = !std::isfinite(g.decay_exponent);
    double decay = f.decay_exponent + g.decay_exponent;
    if (f.asymptote != 0.0) decay = std::min(decay, g.decay_exponent);
    if (g.asymptote != 0.0) decay = std::min(decay, f.decay_exponent);
    p.decay_exponent = decay;
    if ((f_compact && f.asymptote == 0.0) || (g_compact && g.asymptote == 0.0)) {
        p.decay_exponent = inf;
        double support = inf;
        if (f_compact && f.asymptote == 0.0) support = std::min(support, f.support_radius);
        if (g_compact && g.asymptote == 0.0) support = std::min(support, g.support_radius);
        p.support_radius = support;
    } else if (f_compact && g_compact) {
        p.support_radius = std::max(f.support_radius, g.support_radius);
    }
    p.length_scale = std::min(f.length_scale, g.length_scale);
    p.breakpoints = f.breakpoints;
    p.breakpoints.insert(p.breakpoints.end(), g.breakpoints.begin(), g.breakpoints.end());
    p.center = f.center;
    p.name = f.name + "*" + g.name;
    return p;
}

RadialProfile scaled(const RadialProfile& f, double factor) {
    RadialProfile p = f;
    p.value = [f, factor](double r) { return factor * f(r); };
    p.derivative = [f, factor](double r) { return factor * f.slope(r); };
    p.asymptote = factor * f.asymptote;
    p.name = std::to_string(factor) + "*" + f.name;
    return p;
}

RadialProfile shifted(const RadialProfile& f, double c) {
    RadialProfile p = f;
    p.center = f.center + c;
    return p;
}

}  // namespace blowup
