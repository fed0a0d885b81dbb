#include "blowup/kaplan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "blowup/fracops.hpp"
#include "blowup/spectral.hpp"

namespace blowup {

namespace {

constexpr double kThetaTolerance = 1e-4;
// R0 search grid: log-spaced radii on [1, 1e3].
constexpr int kR0Grid = 2000;
constexpr double kR0Max = 1e3;
// Sign scan for -(-Δ)^s κ₁ beyond the candidate R0.
constexpr int kSignGrid = 6000;
constexpr double kSignMax = 1e5;
constexpr double kFarProbes[] = {1e6, 1e8};

double norm(std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return std::sqrt(r2);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
    g.back() = hi;
    return g;
}

// Largest |f| over a grid, polished by golden-section search on the best bracket.
double max_abs_refined(const std::function<double(double)>& f, const std::vector<double>& grid) {
    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = std::abs(f(grid[i]));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double lo = grid[best == 0 ? 0 : best - 1];
    double hi = grid[std::min(grid.size() - 1, best + 1)];
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 100 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
        const double m1 = hi - ratio * (hi - lo);
        const double m2 = lo + ratio * (hi - lo);
        if (std::abs(f(m1)) > std::abs(f(m2)))
            hi = m2;
        else
            lo = m1;
    }
    return std::max(best_val, std::abs(f(0.5 * (lo + hi))));
}

}  // namespace

void KaplanParams::validate() const {
    op.validate();
    if (!(beta > 0.5 * op.N) || !std::isfinite(beta))
        throw std::invalid_argument("kaplan: beta must satisfy beta > N/2 (got " + std::to_string(beta) + ")");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("kaplan: epsilon must lie in (0, 1]");
}

double psi_beta(double r, double beta) { return std::pow(1.0 + r * r, -beta); }

double psi_beta(std::span<const double> x, double beta) { return psi_beta(norm(x), beta); }

double kappa_eps(double r, const KaplanParams& kp) {
    const int N = kp.op.N;
    return std::pow(kp.epsilon, 0.5 * N) / psi_mass(kp.beta, N) * std::pow(1.0 + kp.epsilon * r * r, -kp.beta);
}

double kappa_eps(std::span<const double> x, const KaplanParams& kp) { return kappa_eps(norm(x), kp); }

RadialProfile kappa_profile(const KaplanParams& kp) {
    kp.validate();
    const double eps = kp.epsilon;
    const double beta = kp.beta;
    const double amp = std::pow(eps, 0.5 * kp.op.N) / psi_mass(beta, kp.op.N);
    RadialProfile p;
    p.value = [=](double r) { return amp * std::pow(1.0 + eps * r * r, -beta); };
    p.derivative = [=](double r) { return -2.0 * beta * eps * r * amp * std::pow(1.0 + eps * r * r, -beta - 1.0); };
    p.decay_exponent = 2.0 * beta;
    p.length_scale = 1.0 / std::sqrt(eps);
    p.breakpoints = {1.0 / std::sqrt(eps)};
    p.name = "kappa";
    return p;
}

double kappa1_derivative(double r, double beta, int N) {
    return -2.0 * beta * r / (psi_mass(beta, N) * std::pow(1.0 + r * r, beta + 1.0));
}

double laplacian_kappa1(double r, double beta, int N) {
    const double r2 = r * r;
    return 2.0 * beta / (psi_mass(beta, N) * std::pow(1.0 + r2, beta + 2.0)) * ((2.0 * beta - N + 2.0) * r2 - N);
}

double closed_form_frac_psi(double r, double beta, const OperatorParams& op, double theta) {
    const double s = op.s;
    const double w = 1.0 / (1.0 + r * r);
    return theta * gauss_2f1_complement(-s, beta + s, 0.5 * op.N, w) * std::pow(w, beta + s);
}

double closed_form_frac_psi_direct(double r, double beta, const OperatorParams& op, double theta) {
    return theta * gauss_2f1(0.5 * op.N + op.s, beta + op.s, 0.5 * op.N, -r * r);
}

double frac_laplacian_kappa1(double r, double beta, const OperatorParams& op, double theta) {
    return closed_form_frac_psi(r, beta, op, theta) / psi_mass(beta, op.N);
}

std::vector<double> theta_check_radii() { return {0.25, 0.5, 4.0, 8.0, 16.0}; }

double calibrate_theta(double beta, const OperatorParams& op) {
    KaplanParams{beta, 1.0, op}.validate();
    const OperatorParams frac{0.0, 1.0, op.s, op.N};
    const RadialProfile psi = psi_profile(beta);
    const double theta = frac_laplacian_pv(psi, 0.0, frac);
    if (!(theta > 0.0)) throw CalibrationError("calibrate_theta: (-Δ)^s Ψ_β(0) is not positive");
    for (double r : theta_check_radii()) {
        const double quad = frac_laplacian_pv(psi, r, frac);
        const double closed = closed_form_frac_psi(r, beta, frac, theta);
        const double rel = std::abs(closed - quad) / std::abs(quad);
        if (!(rel <= kThetaTolerance))
            throw CalibrationError("calibrate_theta: closed form and quadrature disagree at r = " +
                                   std::to_string(r) + " (relative " + std::to_string(rel) + ")");
    }
    return theta;
}

double calibrate_theta_spectral(double beta, const OperatorParams& op) {
    KaplanParams{beta, 1.0, op}.validate();
    const OperatorParams frac{0.0, 1.0, op.s, op.N};
    double L = 0.0;
    int M = 0;
    if (op.N == 1) {
        L = 2000.0;
        M = 1 << 17;
    } else if (op.N == 2) {
        L = 102.4;
        M = 2048;
    } else {
        throw std::invalid_argument("calibrate_theta_spectral: only N = 1, 2 are supported");
    }
    const GridField psi = sample_radial(L, M, op.N, [beta](double r) { return psi_beta(r, beta); });
    const GridField out = spectral_apply(psi, frac);
    const std::size_t centre = op.N == 1 ? static_cast<std::size_t>(M / 2)
                                         : static_cast<std::size_t>(M / 2) * M + M / 2;
    return out.data[centre];
}

KaplanBounds compute_bounds(const KaplanParams& kp0) {
    kp0.validate();
    const OperatorParams& op = kp0.op;
    const int N = op.N;
    const double beta = kp0.beta;
    const double s = op.s;

    KaplanBounds kb;
    kb.beta = beta;
    kb.eps = 1.0;
    kb.c_beta = psi_mass(beta, N);
    kb.theta = calibrate_theta(beta, op);

    std::vector<double> near(20001);
    for (std::size_t i = 0; i < near.size(); ++i) near[i] = 50.0 * static_cast<double>(i) / (near.size() - 1);
    kb.A = max_abs_refined([&](double r) { return laplacian_kappa1(r, beta, N); }, near);

    const double theta = kb.theta;
    auto frac_k1 = [&](double r) { return frac_laplacian_kappa1(r, beta, op, theta); };
    std::vector<double> b_grid = near;
    for (double r : log_grid(50.0, 1e6, 2000)) b_grid.push_back(r);
    kb.B = max_abs_refined(frac_k1, b_grid);

    // R0: the sign of -(-Δ)^s κ₁ must stay positive beyond it.
    const std::vector<double> fine = log_grid(1.0, kSignMax, kSignGrid);
    double last_nonpositive = 0.0;
    for (double r : fine)
        if (!(-frac_k1(r) > 0.0)) last_nonpositive = r;
    for (double r : kFarProbes)
        if (!(-frac_k1(r) > 0.0))
            throw EnvelopeError("compute_bounds: -(-Δ)^s κ₁ is not positive at the far probe r = " +
                                std::to_string(r));
    const std::vector<double> r0_grid = log_grid(1.0, kR0Max, kR0Grid);
    kb.R0 = std::numeric_limits<double>::quiet_NaN();
    for (double r : r0_grid)
        if (r > last_nonpositive && -frac_k1(r) > 0.0) {
            kb.R0 = r;
            break;
        }
    if (!std::isfinite(kb.R0))
        throw EnvelopeError("compute_bounds: no R0 <= 1e3 with -(-Δ)^s κ₁ > 0 beyond it");

    auto envelope = [&](double r) { return std::pow(1.0 + r * r, 0.5 * N + s) * -frac_k1(r); };
    // R0 itself is sampled: the band must hold on the closure by continuity.
    std::vector<double> samples = log_grid(kb.R0, 100.0 * kb.R0, 2001);
    for (double r : {1e3 * kb.R0, kFarProbes[0], kFarProbes[1]})
        if (r > samples.back()) samples.push_back(r);
    kb.eta1 = std::numeric_limits<double>::infinity();
    for (double r : samples) kb.eta1 = std::min(kb.eta1, envelope(r));
    if (kb.eta1 > 0.0) {
        // Polished extrema; the minimum goes through 1/envelope.
        kb.eta1 = std::min(kb.eta1, 1.0 / max_abs_refined([&](double r) { return 1.0 / envelope(r); }, samples));
        kb.eta2 = max_abs_refined(envelope, samples);
    }
    if (!(kb.eta1 > 0.0)) throw EnvelopeError("compute_bounds: envelope lower constant is not positive");

    const double base = 1.0 + kb.R0 * kb.R0;
    kb.lambda1 = 2.0 * op.a * beta * N / (base * base);
    kb.lambda2 = kb.c_beta * std::pow(base, beta) * (op.a * kb.A + op.b * kb.B);
    kb.lambda0 = std::max(kb.lambda1, kb.lambda2);
    return kb;
}

SubsolutionReport verify_subsolution(const KaplanParams& kp, double lambda, std::span<const double> radii,
                                     const KaplanBounds& bounds) {
    kp.validate();
    const OperatorParams& op = kp.op;
    const int N = op.N;
    const double eps = kp.epsilon;
    const double root = std::sqrt(eps);
    const double local_scale = std::pow(eps, 1.0 + 0.5 * N);
    const double frac_scale = std::pow(eps, op.s + 0.5 * N);

    SubsolutionReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.min_relative_margin = std::numeric_limits<double>::infinity();
    rep.pass = true;
    for (double r : radii) {
        const double y = root * r;
        const double kappa = kappa_eps(r, kp);
        const double m = op.a * local_scale * laplacian_kappa1(y, kp.beta, N) -
                         op.b * frac_scale * frac_laplacian_kappa1(y, kp.beta, op, bounds.theta) + lambda * kappa;
        rep.min_margin = std::min(rep.min_margin, m);
        const double rel = m / kappa;
        if (rel < rep.min_relative_margin) {
            rep.min_relative_margin = rel;
            rep.worst_radius = r;
        }
        if (!(m >= -1e-10 * kappa)) rep.pass = false;
    }
    return rep;
}

std::vector<double> verification_radii(double epsilon, int count) {
    if (count < 4) throw std::invalid_argument("verification_radii: need at least four samples");
    const double scale = 1.0 / std::sqrt(epsilon);
    const int uniform = count / 2;
    std::vector<double> radii;
    radii.reserve(count);
    for (int i = 0; i < uniform; ++i) radii.push_back(10.0 * scale * i / (uniform - 1));
    for (double r : log_grid(10.0 * scale, 1e6 * scale, count - uniform + 1))
        if (r > radii.back()) radii.push_back(r);
    return radii;
}

}  // namespace blowup
