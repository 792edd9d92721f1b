#pragma once

#include <string>

#include "core/config.hpp"

namespace dissipact {

struct RunOutcome {
  int exit_code = 0;  // 0 pass, 1 runtime error, 2 requested check failed
  std::string message;
};

/// Builds the configured model, integrates, writes the requested artifacts
/// into outputs.dir, and evaluates the requested check. Errors are caught and
/// reported as exit code 1 with the message filled in.
RunOutcome run(const RunSpec& spec);

/// Loads and validates a system file: exit 0 when the structure checks pass,
/// 2 when the file is well-formed but the structure is violated, 1 otherwise.
RunOutcome validate_system_file(const std::string& path);

/// Verbosity from DISSIPACT_LOG: 0 quiet, 1 progress (default), 2 debug.
int log_level();

}  // namespace dissipact
