#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowup/datum.hpp"
#include "blowup/kaplan.hpp"
#include "blowup/reaction.hpp"

namespace blowup {

/// Hypothesis on the solution under which a certificate applies; it is
/// reported, not verified.
inline constexpr const char* kSolutionAssumption =
    "conclusion applies to classical solutions with kappa * u_t(., t) integrable for each t "
    "(automatic when u_t is bounded)";
/// Which ε-exponent the threshold λ uses.
inline constexpr const char* kExponentNote =
    "lambda = eps^s * lambda0 (exponent s); the alternative eps^(1/s) scaling is not used";

struct KaplanCertificate {
    double beta = 0.0;
    double epsilon = 0.0;
    double lambda = 0.0;      ///< ε^s λ₀
    double integral_I = 0.0;  ///< ∫ κ_ε u₀
    double threshold = 0.0;   ///< s_f(λ)
    double margin = 0.0;      ///< I - threshold
    bool certified = false;
    std::optional<double> blowup_time_bound;
    KaplanBounds bounds_audit;
    OperatorParams op;

    double relative_margin() const { return threshold > 0.0 ? margin / threshold : margin; }
};

/// ∫ κ_ε u₀ over R^N by radial quadrature, relative error <= 1e-8.
double weighted_mass(const InitialDatum& u0, const KaplanParams& kp);

KaplanCertificate certify(const InitialDatum& u0, const ReactionSpec& spec, const KaplanParams& kp,
                          const KaplanBounds& bounds);

struct SearchOptions {
    bool refine = false;       ///< extend the grid down to eps_floor if nothing certifies
    double eps_floor = 1e-10;
};

struct SearchPoint {
    double epsilon = 0.0;
    double margin = 0.0;
    double relative_margin = 0.0;
    bool certified = false;
};

struct SearchResult {
    std::optional<KaplanCertificate> best;
    std::vector<SearchPoint> curve;
    KaplanBounds bounds;
    bool refined = false;
    /// s/(p-1) - N/2 for power reactions; positive means the margin ratio
    /// improves like ε^{-exponent} as ε -> 0.
    std::optional<double> scaling_exponent;
};

/// ε over {1, 10^{-1/2}, ..., 10^{-6}}, then down to eps_floor when refining.
std::vector<double> epsilon_grid(bool refine, double eps_floor = 1e-10);

SearchResult epsilon_search(const InitialDatum& u0, const ReactionSpec& spec, double beta, const OperatorParams& op,
                            const SearchOptions& opts = {});
SearchResult epsilon_search(const InitialDatum& u0, const ReactionSpec& spec, const KaplanBounds& bounds,
                            const OperatorParams& op, const SearchOptions& opts = {});

double fujita_exponent(const OperatorParams& op);

struct FujitaRow {
    double p = 0.0;
    bool subcritical = false;
    bool certified = false;
    double epsilon = 0.0;     ///< best ε, or 0 when none certified
    double margin = 0.0;      ///< margin of the best point on the grid
    std::optional<double> time_bound;
    bool trivial_datum = false;
};

struct FujitaTable {
    std::vector<FujitaRow> rows;
    double p_fujita = 0.0;
    bool complete() const;
};

class ScanIncompleteError : public std::runtime_error {
public:
    ScanIncompleteError(const std::string& what, FujitaTable table)
        : std::runtime_error(what), table_(std::move(table)) {}
    const FujitaTable& table() const { return table_; }

private:
    FujitaTable table_;
};

/// Runs a refined epsilon_search for each p; throws ScanIncompleteError if a
/// subcritical p stays uncertified for a nontrivial datum.
FujitaTable fujita_scan(const OperatorParams& op, const InitialDatum& u0, double beta,
                        const std::vector<double>& p_grid);

/// β = N/2 + 1.
double default_beta(int N);

}  // namespace blowup
