#include "blowup/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "blowup/certifier.hpp"
#include "json.hpp"

namespace blowup {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& item : j.items())
        if (!allowed.count(item.key())) throw ConfigError(where + ": unknown key '" + item.key() + "'");
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
    return j.contains(key) ? number(j.at(key), where + "." + key) : fallback;
}

bool bool_or(const json& j, const char* key, bool fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) throw ConfigError(where + "." + key + ": expected true or false");
    return j.at(key).get<bool>();
}

int integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
    return j.get<int>();
}

std::string string_at(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return j.at(key).get<std::string>();
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Command parse_command(const std::string& s) {
    if (s == "certify") return Command::Certify;
    if (s == "kaplan-verify") return Command::KaplanVerify;
    if (s == "simulate") return Command::Simulate;
    if (s == "fujita-scan") return Command::FujitaScan;
    throw ConfigError("command: expected certify, kaplan-verify, simulate or fujita-scan, got '" + s + "'");
}

OperatorParams parse_operator(const json& j) {
    require_keys(j, "operator", {"a", "b", "s", "N"});
    OperatorParams op;
    op.a = number_or(j, "a", op.a, "operator");
    op.b = number_or(j, "b", op.b, "operator");
    op.s = number_or(j, "s", op.s, "operator");
    if (j.contains("N")) op.N = integer(j.at("N"), "operator.N");
    try {
        op.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("operator: ") + e.what());
    }
    return op;
}

ReactionSpec parse_reaction(const json& j) {
    const std::string kind = string_at(j, "kind", "reaction");
    if (kind == "power") {
        require_keys(j, "reaction", {"kind", "p"});
        if (!j.contains("p")) throw ConfigError("reaction.p: required for kind power");
        const double p = number(j.at("p"), "reaction.p");
        if (!(p > 1.0)) throw ConfigError("reaction.p: the power reaction needs p > 1");
        return power_reaction(p);
    }
    if (kind == "custom") {
        require_keys(j, "reaction", {"kind", "name"});
        try {
            return custom_reaction(string_at(j, "name", "reaction"));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("reaction: ") + e.what());
        }
    }
    throw ConfigError("reaction.kind: expected power or custom, got '" + kind + "'");
}

InitialDatum parse_datum(const json& j) {
    const std::string kind = string_at(j, "kind", "datum");
    try {
        if (kind == "gaussian") {
            require_keys(j, "datum", {"kind", "amplitude", "width"});
            return gaussian_datum(number_or(j, "amplitude", 1.0, "datum"), number_or(j, "width", 1.0, "datum"));
        }
        if (kind == "bump") {
            require_keys(j, "datum", {"kind", "amplitude", "radius"});
            return bump_datum(number_or(j, "amplitude", 1.0, "datum"), number_or(j, "radius", 1.0, "datum"));
        }
        if (kind == "power_tail") {
            require_keys(j, "datum", {"kind", "amplitude", "exponent"});
            if (!j.contains("exponent")) throw ConfigError("datum.exponent: required for kind power_tail");
            return power_tail_datum(number_or(j, "amplitude", 1.0, "datum"), number(j.at("exponent"), "datum.exponent"));
        }
        if (kind == "tabulated") {
            require_keys(j, "datum", {"kind", "radii", "values"});
            if (!j.contains("radii") || !j.contains("values"))
                throw ConfigError("datum: tabulated needs radii and values");
            return tabulated_datum(number_list(j.at("radii"), "datum.radii"),
                                   number_list(j.at("values"), "datum.values"));
        }
        if (kind == "constant") {
            require_keys(j, "datum", {"kind", "value"});
            return constant_datum(number_or(j, "value", 0.0, "datum"));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("datum: ") + e.what());
    }
    throw ConfigError("datum.kind: expected gaussian, bump, power_tail, tabulated or constant, got '" + kind + "'");
}

void parse_kaplan(const json& j, RunConfig& cfg) {
    require_keys(j, "kaplan", {"beta", "epsilon", "refine", "lambda"});
    if (j.contains("beta")) cfg.beta = number(j.at("beta"), "kaplan.beta");
    if (j.contains("epsilon")) {
        const json& e = j.at("epsilon");
        if (e.is_string()) {
            if (e.get<std::string>() != "search") throw ConfigError("kaplan.epsilon: expected a number or \"search\"");
            cfg.epsilon.reset();
        } else {
            cfg.epsilon = number(e, "kaplan.epsilon");
            if (!(*cfg.epsilon > 0.0) || !(*cfg.epsilon <= 1.0))
                throw ConfigError("kaplan.epsilon: must lie in (0, 1]");
        }
    }
    cfg.refine = bool_or(j, "refine", cfg.refine, "kaplan");
    if (j.contains("lambda")) {
        cfg.lambda = number(j.at("lambda"), "kaplan.lambda");
        if (!(*cfg.lambda >= 0.0)) throw ConfigError("kaplan.lambda: must be >= 0");
    }
}

void parse_sim(const json& j, SimSection& sim) {
    require_keys(j, "sim",
                 {"L", "M", "dt_init", "dt_max", "t_max", "blowup_threshold", "linear", "track_phi", "certificate"});
    sim.L = number_or(j, "L", sim.L, "sim");
    if (j.contains("M")) sim.M = integer(j.at("M"), "sim.M");
    sim.dt_init = number_or(j, "dt_init", sim.dt_init, "sim");
    sim.dt_max = number_or(j, "dt_max", sim.dt_max, "sim");
    sim.t_max = number_or(j, "t_max", sim.t_max, "sim");
    sim.blowup_threshold = number_or(j, "blowup_threshold", sim.blowup_threshold, "sim");
    sim.linear = bool_or(j, "linear", sim.linear, "sim");
    sim.track_phi = bool_or(j, "track_phi", sim.track_phi, "sim");
    sim.certificate = bool_or(j, "certificate", sim.certificate, "sim");
}

}  // namespace

const char* to_string(Command c) {
    switch (c) {
        case Command::Certify: return "certify";
        case Command::KaplanVerify: return "kaplan-verify";
        case Command::Simulate: return "simulate";
        case Command::FujitaScan: return "fujita-scan";
    }
    return "unknown";
}

double RunConfig::beta_or_default() const { return beta ? *beta : default_beta(op.N); }

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require_keys(j, "config",
                 {"command", "operator", "reaction", "datum", "kaplan", "sim", "scan", "output_dir", "seed"});
    RunConfig cfg;
    cfg.command = parse_command(string_at(j, "command", "config"));
    if (j.contains("operator")) cfg.op = parse_operator(j.at("operator"));
    if (j.contains("reaction")) cfg.reaction = parse_reaction(j.at("reaction"));
    if (j.contains("datum")) cfg.datum = parse_datum(j.at("datum"));
    if (j.contains("kaplan")) parse_kaplan(j.at("kaplan"), cfg);
    if (j.contains("sim")) parse_sim(j.at("sim"), cfg.sim);
    if (j.contains("scan")) {
        require_keys(j.at("scan"), "scan", {"p_grid"});
        if (j.at("scan").contains("p_grid")) cfg.p_grid = number_list(j.at("scan").at("p_grid"), "scan.p_grid");
    }
    if (j.contains("output_dir")) cfg.output_dir = string_at(j, "output_dir", "config");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed: expected a nonnegative integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }

    const double beta = cfg.beta_or_default();
    if (!(beta > 0.5 * cfg.op.N))
        throw ConfigError("kaplan.beta: must satisfy beta > N/2 (got beta = " + std::to_string(beta) +
                          ", N = " + std::to_string(cfg.op.N) + ")");
    if (cfg.command == Command::FujitaScan) {
        if (cfg.p_grid.empty()) throw ConfigError("scan.p_grid: required for fujita-scan");
        for (double p : cfg.p_grid)
            if (!(p > 1.0)) throw ConfigError("scan.p_grid: exponents must exceed 1");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace blowup
