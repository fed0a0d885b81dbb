#pragma once

#include <ostream>

#include "blowup/config.hpp"

namespace blowup {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitNegative = 2, kExitNotCertified = 3 };

// Each command writes its files into cfg.output_dir and returns an exit code;
// errors propagate as exceptions.
int cmd_certify(const RunConfig& cfg, std::ostream& log);
int cmd_kaplan_verify(const RunConfig& cfg, std::ostream& log);
int cmd_simulate(const RunConfig& cfg, std::ostream& log);
int cmd_fujita_scan(const RunConfig& cfg, std::ostream& log);

/// Dispatches on cfg.command; any exception becomes kExitError with a message on `err`.
int run_command(const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace blowup
