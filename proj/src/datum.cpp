#include "blowup/datum.hpp"

#include <algorithm>
#include <cmath>

// Boost 1.74 pchip calls isnan unqualified.
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace blowup {

namespace {

void require_amplitude(double a) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("datum: amplitude must be finite and >= 0");
}

std::shared_ptr<const std::function<double(double)>> build_pchip(const std::vector<double>& nodes,
                                                                 const std::vector<double>& values) {
    using boost::math::interpolators::pchip;
    auto spline = std::make_shared<pchip<std::vector<double>>>(std::vector<double>(nodes),
                                                               std::vector<double>(values));
    const double last = nodes.back();
    const double tail = values.back();
    return std::make_shared<const std::function<double(double)>>([spline, last, tail](double r) {
        if (r >= last) return tail;
        return std::max(0.0, (*spline)(r));
    });
}

}  // namespace

double InitialDatum::operator()(double r) const {
    switch (kind) {
        case DatumKind::Gaussian: return amplitude * std::exp(-(r / width) * (r / width));
        case DatumKind::Bump: {
            const double t = r / radius;
            if (t >= 1.0) return 0.0;
            return amplitude * std::exp(1.0 - 1.0 / (1.0 - t * t));
        }
        case DatumKind::PowerTail: return amplitude * std::pow(1.0 + r * r, -0.5 * exponent);
        case DatumKind::Tabulated: return (*interpolant)(r);
        case DatumKind::Constant: return amplitude;
    }
    return 0.0;
}

double InitialDatum::sup() const {
    if (kind == DatumKind::Tabulated) return *std::max_element(values.begin(), values.end());
    return amplitude;
}

bool InitialDatum::is_zero() const { return sup() == 0.0; }

double InitialDatum::support_radius() const {
    if (kind == DatumKind::Bump) return radius;
    if (is_zero()) return 0.0;
    return std::numeric_limits<double>::infinity();
}

std::vector<double> InitialDatum::features() const {
    switch (kind) {
        case DatumKind::Gaussian: return {width, 3.0 * width, 6.0 * width};
        case DatumKind::Bump: return {0.5 * radius, 0.9 * radius, radius};
        case DatumKind::PowerTail: return {1.0, 10.0};
        case DatumKind::Tabulated: {
            std::vector<double> f;
            const std::size_t stride = std::max<std::size_t>(1, nodes.size() / 100);
            for (std::size_t i = 1; i < nodes.size(); i += stride) f.push_back(nodes[i]);
            f.push_back(nodes.back());
            return f;
        }
        case DatumKind::Constant: return {};
    }
    return {};
}

double InitialDatum::length_scale() const {
    switch (kind) {
        case DatumKind::Gaussian: return width;
        case DatumKind::Bump: return radius;
        case DatumKind::PowerTail: return 1.0;
        case DatumKind::Tabulated: return nodes.back();
        case DatumKind::Constant: return 1.0;
    }
    return 1.0;
}

InitialDatum InitialDatum::scaled(double c) const {
    require_amplitude(c);
    InitialDatum d = *this;
    if (kind == DatumKind::Tabulated) {
        for (double& v : d.values) v *= c;
        d.interpolant = build_pchip(d.nodes, d.values);
    } else {
        d.amplitude *= c;
    }
    return d;
}

std::string InitialDatum::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << to_string(kind);
    switch (kind) {
        case DatumKind::Gaussian: os << "(amplitude=" << amplitude << ", width=" << width << ")"; break;
        case DatumKind::Bump: os << "(amplitude=" << amplitude << ", radius=" << radius << ")"; break;
        case DatumKind::PowerTail: os << "(amplitude=" << amplitude << ", exponent=" << exponent << ")"; break;
        case DatumKind::Tabulated: os << "(" << nodes.size() << " nodes)"; break;
        case DatumKind::Constant: os << "(" << amplitude << ")"; break;
    }
    return os.str();
}

void InitialDatum::validate() const {
    if (kind != DatumKind::Tabulated) require_amplitude(amplitude);
    switch (kind) {
        case DatumKind::Gaussian:
            if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("gaussian datum: width must be > 0");
            break;
        case DatumKind::Bump:
            if (!(radius > 0.0) || !std::isfinite(radius))
                throw std::invalid_argument("bump datum: radius must be > 0");
            break;
        case DatumKind::PowerTail:
            if (!(exponent > 0.0) || !std::isfinite(exponent))
                throw std::invalid_argument("power_tail datum: exponent must be > 0");
            break;
        case DatumKind::Tabulated:
            if (nodes.size() != values.size() || nodes.size() < 4)
                throw std::invalid_argument("tabulated datum: need at least four (radius, value) pairs");
            if (nodes.front() != 0.0) throw std::invalid_argument("tabulated datum: first radius must be 0");
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                if (i > 0 && !(nodes[i] > nodes[i - 1]))
                    throw std::invalid_argument("tabulated datum: radii must be strictly increasing");
                if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
                    throw std::invalid_argument("tabulated datum: values must be finite and >= 0");
            }
            if (!interpolant) throw std::invalid_argument("tabulated datum: interpolant missing");
            break;
        case DatumKind::Constant: break;
    }
}

InitialDatum gaussian_datum(double amplitude, double width) {
    InitialDatum d;
    d.kind = DatumKind::Gaussian;
    d.amplitude = amplitude;
    d.width = width;
    d.validate();
    return d;
}

InitialDatum bump_datum(double amplitude, double radius) {
    InitialDatum d;
    d.kind = DatumKind::Bump;
    d.amplitude = amplitude;
    d.radius = radius;
    d.validate();
    return d;
}

InitialDatum power_tail_datum(double amplitude, double exponent) {
    InitialDatum d;
    d.kind = DatumKind::PowerTail;
    d.amplitude = amplitude;
    d.exponent = exponent;
    d.validate();
    return d;
}

InitialDatum tabulated_datum(std::vector<double> nodes, std::vector<double> values) {
    InitialDatum d;
    d.kind = DatumKind::Tabulated;
    d.nodes = std::move(nodes);
    d.values = std::move(values);
    if (d.nodes.size() == d.values.size() && d.nodes.size() >= 4) {
        try {
            d.interpolant = build_pchip(d.nodes, d.values);
        } catch (const std::exception&) {
            // validate() reports the offending table entry.
        }
    }
    d.validate();
    return d;
}

InitialDatum constant_datum(double c) {
    InitialDatum d;
    d.kind = DatumKind::Constant;
    d.amplitude = c;
    d.validate();
    return d;
}

const char* to_string(DatumKind k) {
    switch (k) {
        case DatumKind::Gaussian: return "gaussian";
        case DatumKind::Bump: return "bump";
        case DatumKind::PowerTail: return "power_tail";
        case DatumKind::Tabulated: return "tabulated";
        case DatumKind::Constant: return "constant";
    }
    return "unknown";
}

}  // namespace blowup
