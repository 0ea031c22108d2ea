#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "polaris/agent/engine.hpp"
#include "polaris/core/config.hpp"

namespace polaris::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2 };

/// Loads datasets and the base policy named by the config. Missing or
/// malformed inputs throw ConfigError.
agent::EngineInputs load_inputs(const RunConfig& config);

/// Builds backend, clock and engine for `config` and runs it to completion.
agent::RunRecord execute_run(const RunConfig& config);

/// Entry point shared by the binary and the tests. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polaris::cli
