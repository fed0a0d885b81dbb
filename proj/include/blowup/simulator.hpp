#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowup/datum.hpp"
#include "blowup/kaplan.hpp"
#include "blowup/reaction.hpp"
#include "blowup/spectral.hpp"

namespace blowup {

struct SimConfig {
    OperatorParams op;              ///< op.N is the grid dimension (1 or 2)
    ReactionSpec reaction;
    bool linear = false;            ///< drop the reaction (f ≡ 0)
    InitialDatum u0;
    double L = 40.0;                ///< box half-width
    int M = 2048;                   ///< points per dimension
    double dt_init = 1e-3;
    double dt_max = 0.1;
    double t_max = 1.0;
    double blowup_threshold = 1e10;
    double dt_floor = 1e-12;
    double grow_below = 0.01;       ///< double dt when the relative change is below this
    double shrink_above = 0.10;     ///< reject and halve when above this
    std::optional<KaplanParams> kaplan;  ///< enables Φ tracking
    std::optional<double> lambda;   ///< comparison λ; defaults to ε^s λ₀
    bool parallel = true;

    void validate() const;
};

class SimulationOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

enum class SimTermination { ReachedTmax, BlowupDetected, StepUnderflow };
const char* to_string(SimTermination t);

struct Trajectory {
    std::vector<double> times;
    std::vector<double> sup_norm;
    std::vector<double> phi;               ///< Φ(t); empty without kaplan
    std::vector<double> jensen_residual;   ///< ∫κf(u) - f(∫κu) per snapshot
    /// ΔΦ/Δt + λΦ - f(Φ) over [t_{n-1}, t_n], stored at snapshot n (NaN at n = 0).
    std::vector<double> comparison_residual;
    std::vector<double> comparison_tolerance;  ///< tol_dyn for the same interval
    SimTermination termination = SimTermination::ReachedTmax;
    double blowup_time = 0.0;
    /// First time sup u reached 1e-2 * blowup_threshold.
    std::optional<double> early_crossing_time;
    double lambda = 0.0;
    double spatial_defect = 0.0;   ///< max(0, max_i (L_h w)_i / w_i - λ)
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t clamp_events = 0;  ///< grid values below -1e-8 sup set to 0
    double tail_indicator = 0.0;   ///< max over snapshots of the mass fraction in the outer 10% shell
    double max_imag_residue = 0.0;

    /// |t_b - t(1e-2 threshold)| / t_b; 0 when no blow-up was detected.
    double threshold_sensitivity() const;
    /// Fraction of intervals with comparison residual >= -tol_dyn.
    double comparison_pass_fraction() const;
    double min_jensen_margin() const;  ///< min over snapshots of residual / (1 + |f(Φ)|)
};

/// One Lawson-Euler step û ← e^{-Ldt}(û + dt f(u)^). Throws SimulationOverflow
/// above 1e300. `clamped` receives the number of undershoots set to zero.
GridField step(const GridField& state, double dt, const SimConfig& config, std::size_t* clamped = nullptr);

Trajectory run(const SimConfig& config);

struct ConvergenceReport {
    double base = 0.0;      ///< t_b, or the decay rate in linear mode
    double refined = 0.0;   ///< M×2, dt and step tolerances ÷2
    double widened = 0.0;   ///< L×1.5 (with M×2 so the spacing does not coarsen)
    double drift = 0.0;     ///< max relative deviation from base
    bool linear = false;
};

ConvergenceReport convergence_probe(const SimConfig& config);

}  // namespace blowup
