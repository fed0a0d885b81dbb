#include "blowup/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "blowup/quadrature.hpp"

namespace blowup {

namespace {

// Margins within floating-point noise of the threshold do not certify.
constexpr double kMarginFloor = 1e-12;

}  // namespace

double weighted_mass(const InitialDatum& u0, const KaplanParams& kp) {
    u0.validate();
    kp.validate();
    if (u0.is_zero()) return 0.0;
    if (u0.kind == DatumKind::Constant) return u0.amplitude;  // κ_ε has unit mass
    const int N = kp.op.N;
    const double beta = kp.beta;
    const double root = std::sqrt(kp.epsilon);
    const double prefactor = unit_sphere_area(N) / psi_mass(beta, N);

    // ρ = √ε r turns κ_ε into κ₁; the datum is evaluated at ρ/√ε.
    const Integrand g = [&](double rho) {
        const double u = u0(rho / root);
        if (u == 0.0) return 0.0;
        return std::pow(rho, N - 1) * std::pow(1.0 + rho * rho, -beta) * u;
    };
    std::vector<double> cuts{1.0};
    for (double f : u0.features()) cuts.push_back(root * f);

    const QuadOptions opts{1e-300, 1e-11, 4000};
    const double support = u0.support_radius();
    QuadResult res;
    if (std::isfinite(support)) {
        res = integrate(g, 0.0, root * support, opts, cuts);
    } else {
        double P = 2.0;
        for (double c : cuts) P = std::max(P, 2.0 * c);
        res = integrate(g, 0.0, P, opts, cuts);
        // Tail: the integrand is at most sup u₀ ρ^{N-1-2β}; stop once that
        // bound is below 1e-13 of the running value.
        const double decay = 2.0 * beta - N;
        const double bound_at_P = u0.sup() * std::pow(P, -decay) / decay;
        const double target = 1e-13 * std::max(std::abs(res.value), 1e-300);
        const double u_max = bound_at_P > target ? std::min(700.0, std::log(bound_at_P / target) / decay) : 0.0;
        if (u_max > 0.0) res += integrate_log_range(g, P, u_max, opts);
    }
    if (!res.converged || !std::isfinite(res.value))
        throw QuadratureError("weighted_mass: quadrature did not converge");
    return prefactor * res.value;
}

KaplanCertificate certify(const InitialDatum& u0, const ReactionSpec& spec, const KaplanParams& kp,
                          const KaplanBounds& bounds) {
    kp.validate();
    if (bounds.beta != kp.beta) throw std::invalid_argument("certify: bounds were computed for a different beta");
    KaplanCertificate cert;
    cert.beta = kp.beta;
    cert.epsilon = kp.epsilon;
    cert.op = kp.op;
    cert.bounds_audit = bounds;
    cert.lambda = std::pow(kp.epsilon, kp.op.s) * bounds.lambda0;
    cert.integral_I = weighted_mass(u0, kp);
    cert.threshold = s_f(spec, cert.lambda);
    cert.margin = cert.integral_I - cert.threshold;
    cert.certified = cert.margin > kMarginFloor * cert.threshold && cert.integral_I > 0.0;
    if (cert.certified) cert.blowup_time_bound = osgood_blowup_bound(spec, cert.lambda, cert.integral_I);
    return cert;
}

std::vector<double> epsilon_grid(bool refine, double eps_floor) {
    std::vector<double> grid;
    const int last = refine ? static_cast<int>(std::floor(-2.0 * std::log10(eps_floor) + 1e-9)) : 12;
    for (int k = 0; k <= std::max(last, 12); ++k) {
        const double eps = std::pow(10.0, -0.5 * k);
        if (k > 12 && eps < eps_floor * (1.0 - 1e-12)) break;
        grid.push_back(eps);
    }
    return grid;
}

SearchResult epsilon_search(const InitialDatum& u0, const ReactionSpec& spec, double beta, const OperatorParams& op,
                            const SearchOptions& opts) {
    const KaplanBounds bounds = compute_bounds(KaplanParams{beta, 1.0, op});
    return epsilon_search(u0, spec, bounds, op, opts);
}

SearchResult epsilon_search(const InitialDatum& u0, const ReactionSpec& spec, const KaplanBounds& bounds,
                            const OperatorParams& op, const SearchOptions& opts) {
    SearchResult out;
    out.bounds = bounds;
    if (spec.kind == ReactionKind::Power) out.scaling_exponent = op.s / (spec.p - 1.0) - 0.5 * op.N;

    auto evaluate = [&](const std::vector<double>& grid) {
        std::vector<KaplanCertificate> certs(grid.size());
        std::vector<std::exception_ptr> errors(grid.size());
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                certs[i] = certify(u0, spec, KaplanParams{bounds.beta, grid[i], op}, bounds);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
        return certs;
    };

    const std::vector<double> coarse = epsilon_grid(false);
    std::vector<KaplanCertificate> certs = evaluate(coarse);
    const bool any = std::any_of(certs.begin(), certs.end(), [](const auto& c) { return c.certified; });
    if (!any && opts.refine) {
        const std::vector<double> full = epsilon_grid(true, opts.eps_floor);
        std::vector<double> extra(full.begin() + static_cast<std::ptrdiff_t>(coarse.size()), full.end());
        std::vector<KaplanCertificate> more = evaluate(extra);
        certs.insert(certs.end(), more.begin(), more.end());
        out.refined = true;
    }

    // Grid order is decreasing ε, so ">=" resolves ties toward the smaller ε.
    for (const KaplanCertificate& c : certs) {
        out.curve.push_back({c.epsilon, c.margin, c.relative_margin(), c.certified});
        if (!c.certified) continue;
        if (!out.best || c.relative_margin() >= out.best->relative_margin()) out.best = c;
    }
    return out;
}

double fujita_exponent(const OperatorParams& op) {
    op.validate();
    return 1.0 + 2.0 * op.s / op.N;
}

bool FujitaTable::complete() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const FujitaRow& r) { return !r.subcritical || r.trivial_datum || r.certified; });
}

FujitaTable fujita_scan(const OperatorParams& op, const InitialDatum& u0, double beta,
                        const std::vector<double>& p_grid) {
    op.validate();
    u0.validate();
    FujitaTable table;
    table.p_fujita = fujita_exponent(op);
    const KaplanBounds bounds = compute_bounds(KaplanParams{beta, 1.0, op});
    for (double p : p_grid) {
        if (!(p > 1.0)) throw std::invalid_argument("fujita_scan: exponents must exceed 1");
        FujitaRow row;
        row.p = p;
        row.subcritical = p < table.p_fujita;
        row.trivial_datum = u0.is_zero();
        const SearchResult res = epsilon_search(u0, power_reaction(p), bounds, op, {true, 1e-10});
        if (res.best) {
            row.certified = true;
            row.epsilon = res.best->epsilon;
            row.margin = res.best->margin;
            row.time_bound = res.best->blowup_time_bound;
        } else {
            double best = -std::numeric_limits<double>::infinity();
            for (const SearchPoint& pt : res.curve) best = std::max(best, pt.margin);
            row.margin = best;
        }
        table.rows.push_back(row);
    }
    if (!table.complete())
        throw ScanIncompleteError("fujita_scan: a subcritical exponent was not certified down to eps = 1e-10",
                                  table);
    return table;
}

double default_beta(int N) { return 0.5 * N + 1.0; }

}  // namespace blowup
