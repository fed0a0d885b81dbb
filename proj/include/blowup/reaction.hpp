#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blowup {

enum class ReactionKind { Power, Custom };

struct ReactionSpec {
    ReactionKind kind = ReactionKind::Power;
    double p = 2.0;                         ///< exponent of the power kind
    std::string name;                       ///< registry name of a custom kind
    std::function<double(double)> f;        ///< evaluator, set for both kinds
    bool declared_convex = true;

    double operator()(double z) const { return f(z); }
};

/// f(z) = z^p
ReactionSpec power_reaction(double p);
/// Built-in custom reactions by name: z_log1p, z2_plus_z3, exp_minus_one.
ReactionSpec custom_reaction(const std::string& name);
/// Custom reaction from an arbitrary evaluator (library use only).
ReactionSpec custom_reaction(const std::string& name, std::function<double(double)> f, bool declared_convex);
std::vector<std::string> custom_reaction_names();

struct ReactionReport {
    bool item_i = false;    ///< f(0) = 0, f > 0 on (0, ∞)
    bool item_ii = false;   ///< f(z)/z -> ∞
    bool item_iii = false;  ///< ∫_1^∞ dz / f(z) < ∞
    bool convex = false;
    bool lipschitz = false;  ///< bounded difference quotients on samples
    std::vector<std::string> failures;
    std::vector<std::string> caveats;
    bool pass() const { return failures.empty(); }
};

ReactionReport validate_reaction(const ReactionSpec& spec);

class ThresholdError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// inf { z > 0 : f(z)/z > λ }
double s_f(const ReactionSpec& spec, double lambda);

/// T* = ∫_{φ0}^∞ dz / (f(z) - λz); requires φ0 > s_f(λ).
double osgood_blowup_bound(const ReactionSpec& spec, double lambda, double phi0);

enum class OdeTermination { ReachedTmax, Blowup, StepUnderflow };

struct ComparisonTrajectory {
    std::vector<double> t;
    std::vector<double> phi;
    OdeTermination termination = OdeTermination::ReachedTmax;
    double blowup_time = 0.0;      ///< time Φ first exceeded the threshold (Blowup only)
    /// blowup_time plus the remaining ∫_{Φ}^∞ dz / (f(z) - λz) beyond the crossing.
    double blowup_estimate = 0.0;
};

struct ComparisonOptions {
    double blowup_threshold = 1e12;
    double step_floor = 1e-14;  ///< relative to the local time scale Φ / |Φ'|
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
};

/// Adaptive Dormand-Prince integration of Φ' = f(Φ) - λΦ.
ComparisonTrajectory integrate_comparison(const ReactionSpec& spec, double lambda, double phi0, double t_max,
                                          const ComparisonOptions& opts = {});

const char* to_string(OdeTermination t);

}  // namespace blowup
