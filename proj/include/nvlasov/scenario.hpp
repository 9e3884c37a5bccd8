#pragma once

#include <string>

#include "nvlasov/config.hpp"

namespace nvlasov {

// Exit status contract shared with the CLI:
//   0 success, 1 configuration error, 2 runtime abort, 3 property violation.
struct ScenarioResult {
  int exit_code = 0;
  std::string message;
};

// Dispatch a validated config: runs the solver / iteration / blow-up check /
// kernel sweep and writes diagnostics CSV, snapshots, report files and a run
// manifest (config echo, code version, wall time) under cfg.out_dir.
// Deterministic given the config apart from the wall-time manifest line.
ScenarioResult run_scenario(const SimConfig& cfg);

// Build the level-0 solver state from a config (shared with tests).
SimState initial_state_from_config(const SimConfig& cfg);

const char* version_string();

}  // namespace nvlasov
