#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowup/datum.hpp"
#include "blowup/reaction.hpp"
#include "blowup/specfun.hpp"

namespace blowup {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Command { Certify, KaplanVerify, Simulate, FujitaScan };
const char* to_string(Command c);

struct SimSection {
    double L = 40.0;
    int M = 2048;
    double dt_init = 1e-3;
    double dt_max = 0.1;
    double t_max = 1.0;
    double blowup_threshold = 1e10;
    bool linear = false;
    bool track_phi = true;
    bool certificate = false;  ///< also certify and write t_b vs T*
};

/// One run, as read from a JSON document. Every object is parsed strictly:
/// unknown keys are errors.
struct RunConfig {
    Command command = Command::Certify;
    OperatorParams op;
    ReactionSpec reaction = power_reaction(2.0);
    InitialDatum datum = gaussian_datum(1.0, 1.0);
    std::optional<double> beta;       ///< defaults to N/2 + 1
    std::optional<double> epsilon;    ///< nullopt: search over ε
    bool refine = true;
    std::optional<double> lambda;     ///< kaplan-verify override
    SimSection sim;
    std::vector<double> p_grid;
    std::string output_dir = ".";
    std::uint64_t seed = 0;

    double beta_or_default() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace blowup
