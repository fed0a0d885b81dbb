// Command-line front end: blowup --config run.json [--output dir] [--seed n] [--verbose]

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "blowup/commands.hpp"
#include "blowup/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Blow-up certificates and simulations for u_t - a Δu + b (-Δ)^s u = f(u)"};
    std::string config_path;
    std::string output_dir;
    std::uint64_t seed = 0;
    bool verbose = false;
    app.add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    app.add_option("--output", output_dir, "output directory (overrides output_dir in the config)");
    CLI::Option* seed_opt = app.add_option("--seed", seed, "seed recorded with the outputs (overrides the config)");
    app.add_flag("--verbose", verbose, "progress messages on stderr");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 uses 0 for --help; everything else is a usage error.
        return app.exit(e) == 0 ? 0 : blowup::kExitError;
    }

    blowup::RunConfig cfg;
    try {
        cfg = blowup::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return blowup::kExitError;
    }
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (seed_opt->count() > 0) cfg.seed = seed;

    std::ostringstream quiet;
    std::ostream& log = verbose ? std::cerr : quiet;
    return blowup::run_command(cfg, log, std::cerr);
}
