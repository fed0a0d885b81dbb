#include "blowup/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blowup {

namespace {

// On (1,2) with u = t - 1: χ = 1 / (1 + e^φ), φ = 1/(1-u) - 1/u.
struct Transition {
    double sigma, phi1, phi2;
};

Transition transition(double t) {
    const double u = t - 1.0;
    const double v = 1.0 - u;
    const double phi = 1.0 / v - 1.0 / u;
    Transition tr{};
    tr.sigma = phi > 0.0 ? std::exp(-phi) / (1.0 + std::exp(-phi)) : 1.0 / (1.0 + std::exp(phi));
    tr.phi1 = 1.0 / (v * v) + 1.0 / (u * u);
    tr.phi2 = 2.0 / (v * v * v) - 2.0 / (u * u * u);
    return tr;
}

// Dense sampling followed by golden-section polishing around the best sample.
double measured_sup(double (*g)(double)) {
    constexpr int kSamples = 200000;
    double best = 0.0;
    double best_t = 1.5;
    for (int i = 1; i < kSamples; ++i) {
        const double t = 1.0 + static_cast<double>(i) / kSamples;
        const double v = std::abs(g(t));
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    double lo = std::max(1.0 + 1e-12, best_t - 1.0 / kSamples);
    double hi = std::min(2.0 - 1e-12, best_t + 1.0 / kSamples);
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
        const double m1 = hi - ratio * (hi - lo);
        const double m2 = lo + ratio * (hi - lo);
        if (std::abs(g(m1)) > std::abs(g(m2)))
            hi = m2;
        else
            lo = m1;
    }
    best = std::max(best, std::abs(g(0.5 * (lo + hi))));
    return best * (1.0 + 1e-12);
}

}  // namespace

double cutoff_base(double t) {
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    return transition(t).sigma;
}

double cutoff_base_d1(double t) {
    if (t <= 1.0 || t >= 2.0) return 0.0;
    const Transition tr = transition(t);
    return -tr.sigma * (1.0 - tr.sigma) * tr.phi1;
}

double cutoff_base_d2(double t) {
    if (t <= 1.0 || t >= 2.0) return 0.0;
    const Transition tr = transition(t);
    const double d1 = -tr.sigma * (1.0 - tr.sigma) * tr.phi1;
    return -((1.0 - 2.0 * tr.sigma) * d1 * tr.phi1 + tr.sigma * (1.0 - tr.sigma) * tr.phi2);
}

double Cutoff::gradient_norm(double r) const { return std::abs(radial_derivative(r)); }

double Cutoff::laplacian(double r, int N) const {
    const double t = r / R;
    if (t <= 1.0 || t >= 2.0) return 0.0;
    return cutoff_base_d2(t) / (R * R) + (N - 1) * cutoff_base_d1(t) / (r * R);
}

RadialProfile Cutoff::profile() const {
    RadialProfile p;
    const double scale = R;
    p.value = [scale](double r) { return cutoff_base(r / scale); };
    p.derivative = [scale](double r) { return cutoff_base_d1(r / scale) / scale; };
    p.support_radius = 2.0 * R;
    p.length_scale = 0.25 * R;
    p.breakpoints = {R, 1.5 * R, 2.0 * R};
    p.name = "cutoff";
    return p;
}

Cutoff make_cutoff(double R) {
    if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("make_cutoff: R must be positive");
    static const double c1 = measured_sup(&cutoff_base_d1);
    static const double c2 = measured_sup(&cutoff_base_d2);
    return Cutoff{R, c1, c2};
}

}  // namespace blowup
