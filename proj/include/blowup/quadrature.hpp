#pragma once

#include <functional>
#include <span>
#include <stdexcept>

namespace blowup {

using Integrand = std::function<double(double)>;

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  ///< estimated absolute error
    int evaluations = 0;
    bool converged = true;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        error += o.error;
        evaluations += o.evaluations;
        converged = converged && o.converged;
        return *this;
    }
};

/// Raised by callers that require a converged quadrature.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [a, b].
///
/// Interior `breakpoints` (any order, out-of-range values ignored) seed the
/// initial partition so that known kinks or peaks sit on panel boundaries.
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts = {},
                     std::span<const double> breakpoints = {});

/// ∫_a^∞ f via x = a + scale * t / (1 - t).
QuadResult integrate_semi_infinite(const Integrand& f, double a, double scale = 1.0,
                                   const QuadOptions& opts = {});

/// ∫_{a}^{a e^{u_max}} f via x = a e^u, for integrands with algebraic decay.
QuadResult integrate_log_range(const Integrand& f, double a, double u_max, const QuadOptions& opts = {});

}  // namespace blowup
