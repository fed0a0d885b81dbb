#include "blowup/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blowup/kernels.hpp"

namespace blowup {

namespace {

constexpr double kOverflow = 1e300;
constexpr double kClampFraction = 1e-8;
constexpr double kEarlyFraction = 1e-2;

bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

using cplx = kernels::cplx;

// Owns the FFT workspace and the decay multiplier for the current dt.
class Stepper {
public:
    explicit Stepper(const SimConfig& cfg)
        : cfg_(cfg), grid_(cfg.L, cfg.M, cfg.op.N), symbol_(grid_.symbol(cfg.op)), n_(grid_.size()),
          u_hat_(n_), f_hat_(n_), f_(n_), decay_(n_) {}

    std::size_t size() const { return n_; }
    double max_imag_residue() const { return residue_; }

    double reaction(double z) const { return cfg_.linear ? 0.0 : cfg_.reaction(std::max(z, 0.0)); }

    /// Advances u by dt into out; returns the number of clamped values.
    std::size_t advance(std::span<const double> u, double dt, std::span<double> out) {
        set_decay(dt);
        grid_.forward(u, u_hat_);
        if (cfg_.linear) {
            if (cfg_.parallel) kernels::scale_spectrum_omp(u_hat_, decay_);
            else kernels::scale_spectrum_serial(u_hat_, decay_);
        } else {
            const auto f = [this](double z) { return reaction(z); };
            if (cfg_.parallel) kernels::reaction_map_omp(u, f_, f);
            else kernels::reaction_map_serial(u, f_, f);
            grid_.forward(f_, f_hat_);
            if (cfg_.parallel) kernels::lawson_update_omp(u_hat_, f_hat_, decay_, dt);
            else kernels::lawson_update_serial(u_hat_, f_hat_, decay_, dt);
        }
        residue_ = std::max(residue_, grid_.inverse(u_hat_, out));

        double sup = 0.0;
        for (double v : out) {
            if (!std::isfinite(v) || std::abs(v) > kOverflow)
                throw SimulationOverflow("simulator: solution exceeded 1e300");
            sup = std::max(sup, std::abs(v));
        }
        std::size_t clamped = 0;
        for (double& v : out) {
            if (v < -kClampFraction * sup) {
                v = 0.0;
                ++clamped;
            }
        }
        return clamped;
    }

private:
    void set_decay(double dt) {
        if (dt == decay_dt_) return;
        for (std::size_t i = 0; i < n_; ++i) decay_[i] = std::exp(-symbol_[i] * dt);
        decay_dt_ = dt;
    }

    const SimConfig& cfg_;
    SpectralGrid grid_;
    std::vector<double> symbol_;
    std::size_t n_;
    std::vector<cplx> u_hat_, f_hat_;
    std::vector<double> f_;
    std::vector<double> decay_;
    double decay_dt_ = -1.0;
    double residue_ = 0.0;
};

double sup_of(std::span<const double> u, bool parallel) {
    return parallel ? kernels::max_abs_omp(u) : kernels::max_abs_serial(u);
}

double max_change(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

const char* to_string(SimTermination t) {
    switch (t) {
        case SimTermination::ReachedTmax: return "reached_tmax";
        case SimTermination::BlowupDetected: return "blowup_detected";
        case SimTermination::StepUnderflow: return "step_underflow";
    }
    return "unknown";
}

void SimConfig::validate() const {
    op.validate();
    if (op.N != 1 && op.N != 2) throw std::invalid_argument("simulator: dimension must be 1 or 2");
    if (!power_of_two(M) || M < 8) throw std::invalid_argument("simulator: M must be a power of two >= 8");
    u0.validate();
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("simulator: L must be > 0");
    if (L < 10.0 * u0.length_scale())
        throw std::invalid_argument("simulator: box half-width must be at least 10x the datum width");
    if (!(dt_init > 0.0) || !(dt_max >= dt_init) || !(t_max > 0.0))
        throw std::invalid_argument("simulator: need 0 < dt_init <= dt_max and t_max > 0");
    if (!(dt_floor > 0.0) || !(grow_below > 0.0) || !(shrink_above > grow_below))
        throw std::invalid_argument("simulator: invalid step-control parameters");
    if (!(blowup_threshold > u0.sup())) throw std::invalid_argument("simulator: blowup_threshold must exceed sup u0");
    if (!linear && !reaction.f) throw std::invalid_argument("simulator: reaction has no evaluator");
    if (kaplan) {
        kaplan->validate();
        if (kaplan->op.N != op.N || kaplan->op.s != op.s || kaplan->op.a != op.a || kaplan->op.b != op.b)
            throw std::invalid_argument("simulator: kaplan operator differs from the simulated operator");
    }
    if (lambda && !(*lambda >= 0.0)) throw std::invalid_argument("simulator: lambda must be >= 0");
}

double Trajectory::threshold_sensitivity() const {
    if (termination != SimTermination::BlowupDetected || !early_crossing_time) return 0.0;
    return std::abs(blowup_time - *early_crossing_time) / blowup_time;
}

double Trajectory::comparison_pass_fraction() const {
    std::size_t total = 0, ok = 0;
    for (std::size_t i = 0; i < comparison_residual.size(); ++i) {
        if (std::isnan(comparison_residual[i])) continue;
        ++total;
        if (comparison_residual[i] >= -comparison_tolerance[i]) ++ok;
    }
    return total == 0 ? 1.0 : static_cast<double>(ok) / static_cast<double>(total);
}

double Trajectory::min_jensen_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < jensen_residual.size(); ++i) {
        if (std::isnan(jensen_residual[i])) continue;
        m = std::min(m, jensen_residual[i]);
    }
    return m;
}

GridField step(const GridField& state, double dt, const SimConfig& config, std::size_t* clamped) {
    state.validate();
    if (state.dim != config.op.N || state.M != config.M || state.L != config.L)
        throw std::invalid_argument("step: state does not match the configured grid");
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    const double sup = sup_of(state.data, false);
    for (double v : state.data)
        if (v < -kClampFraction * sup - 1e-12) throw std::invalid_argument("step: state must be nonnegative");
    Stepper stepper(config);
    GridField out = state;
    const std::size_t c = stepper.advance(state.data, dt, out.data);
    if (clamped) *clamped = c;
    return out;
}

Trajectory run(const SimConfig& config) {
    config.validate();
    Trajectory traj;
    Stepper stepper(config);
    const std::size_t n = stepper.size();
    const bool par = config.parallel;

    GridField field = sample_radial(config.L, config.M, config.op.N, [&](double r) { return config.u0(r); });
    std::vector<double> u = field.data;
    std::vector<double> next(n);

    // Outer 10% shell: any coordinate beyond 0.9 L.
    std::vector<double> shell(n, 0.0);
    std::vector<double> ones(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rest = i;
        for (int d = 0; d < config.op.N; ++d) {
            const int j = static_cast<int>(rest % static_cast<std::size_t>(config.M));
            rest /= static_cast<std::size_t>(config.M);
            if (std::abs(field.coord(j)) > 0.9 * config.L) shell[i] = 1.0;
        }
    }

    // κ_ε renormalised to unit discrete mass.
    std::vector<double> w;
    double c2 = 0.0;
    if (config.kaplan) {
        const KaplanParams& kp = *config.kaplan;
        GridField kappa = sample_radial(config.L, config.M, config.op.N, [&](double r) { return kappa_eps(r, kp); });
        double total = 0.0;
        for (double v : kappa.data) total += v;
        for (double& v : kappa.data) v /= total;
        w = kappa.data;
        traj.lambda = config.lambda ? *config.lambda
                                    : std::pow(kp.epsilon, config.op.s) *
                                          compute_bounds(KaplanParams{kp.beta, 1.0, kp.op}).lambda0;
        const GridField Lw = spectral_apply(kappa, config.op);
        const GridField LLw = spectral_apply(Lw, config.op);
        double rho = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            rho = std::max(rho, Lw.data[i] / w[i]);
            c2 = std::max(c2, std::abs(LLw.data[i]) / w[i]);
        }
        traj.spatial_defect = std::max(0.0, rho - traj.lambda);
    }
    const double lambda = traj.lambda;
    const auto f = [&](double z) { return stepper.reaction(z); };

    double phi = 0.0, fbar = 0.0;
    auto snapshot = [&](double t, double sup) {
        traj.times.push_back(t);
        traj.sup_norm.push_back(sup);
        const double mass = par ? kernels::weighted_sum_omp(ones, u) : kernels::weighted_sum_serial(ones, u);
        if (mass > 0.0) {
            const double outer = par ? kernels::weighted_sum_omp(shell, u) : kernels::weighted_sum_serial(shell, u);
            traj.tail_indicator = std::max(traj.tail_indicator, outer / mass);
        }
        if (w.empty()) {
            traj.jensen_residual.push_back(std::nan(""));
            return;
        }
        std::vector<double> fu(n);
        for (std::size_t i = 0; i < n; ++i) fu[i] = f(u[i]);
        phi = par ? kernels::weighted_sum_omp(w, u) : kernels::weighted_sum_serial(w, u);
        fbar = par ? kernels::weighted_sum_omp(w, fu) : kernels::weighted_sum_serial(w, fu);
        traj.phi.push_back(phi);
        traj.jensen_residual.push_back(fbar - f(phi));
    };

    double t = 0.0;
    double sup = sup_of(u, par);
    snapshot(t, sup);
    traj.comparison_residual.push_back(std::nan(""));
    traj.comparison_tolerance.push_back(std::nan(""));
    double dt = config.dt_init;
    const double early = kEarlyFraction * config.blowup_threshold;
    if (sup >= early) traj.early_crossing_time = 0.0;

    while (t < config.t_max) {
        const double h = std::min(dt, config.t_max - t);
        const std::size_t clamped = stepper.advance(u, h, next);
        const double change = sup > 0.0 ? max_change(u, next) / sup : 0.0;
        if (change > config.shrink_above) {
            ++traj.rejected_steps;
            dt = 0.5 * h;
            if (dt < config.dt_floor) {
                traj.termination = SimTermination::StepUnderflow;
                break;
            }
            continue;
        }
        traj.clamp_events += clamped;
        ++traj.accepted_steps;
        const double phi_old = phi, fbar_old = fbar;
        u.swap(next);
        t = (h == config.t_max - t) ? config.t_max : t + h;
        sup = sup_of(u, par);
        snapshot(t, sup);
        if (w.empty()) {
            traj.comparison_residual.push_back(std::nan(""));
            traj.comparison_tolerance.push_back(std::nan(""));
        } else {
            traj.comparison_residual.push_back((phi - phi_old) / h + lambda * phi_old - f(phi_old));
            traj.comparison_tolerance.push_back(h * (lambda * fbar_old + std::max(lambda * lambda, c2) * phi_old) +
                                                traj.spatial_defect * phi_old);
        }
        if (!traj.early_crossing_time && sup >= early) traj.early_crossing_time = t;
        if (sup >= config.blowup_threshold) {
            traj.termination = SimTermination::BlowupDetected;
            traj.blowup_time = t;
            break;
        }
        if (change < config.grow_below) dt = std::min(2.0 * h, config.dt_max);
        else dt = h;
    }
    traj.max_imag_residue = stepper.max_imag_residue();
    return traj;
}

namespace {

double probe_metric(const Trajectory& tr, bool linear) {
    if (linear) {
        const double s0 = tr.sup_norm.front(), s1 = tr.sup_norm.back();
        if (s0 == 0.0 || s1 == 0.0) return 0.0;
        return std::log(s0 / s1) / tr.times.back();
    }
    return tr.termination == SimTermination::BlowupDetected ? tr.blowup_time
                                                            : std::numeric_limits<double>::quiet_NaN();
}

double relative_drift(double base, double other) {
    if (std::isnan(base) && std::isnan(other)) return 0.0;
    if (std::isnan(base) || std::isnan(other)) return std::numeric_limits<double>::infinity();
    if (base == other) return 0.0;
    return std::abs(other - base) / std::abs(base);
}

}  // namespace

ConvergenceReport convergence_probe(const SimConfig& config) {
    config.validate();
    ConvergenceReport rep;
    rep.linear = config.linear;

    SimConfig refined = config;
    refined.M = 2 * config.M;
    refined.dt_init = 0.5 * config.dt_init;
    refined.grow_below = 0.5 * config.grow_below;
    refined.shrink_above = 0.5 * config.shrink_above;

    SimConfig widened = config;
    widened.L = 1.5 * config.L;
    widened.M = 2 * config.M;

    rep.base = probe_metric(run(config), config.linear);
    rep.refined = probe_metric(run(refined), config.linear);
    rep.widened = probe_metric(run(widened), config.linear);
    rep.drift = std::max(relative_drift(rep.base, rep.refined), relative_drift(rep.base, rep.widened));
    return rep;
}

}  // namespace blowup
