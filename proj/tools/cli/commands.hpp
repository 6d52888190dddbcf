#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "config.hpp"

namespace evfield {

enum ExitCode : int {
  kPass = 0,
  kDisagreement = 1,
  kConfigError = 2,
  kRegimeFlagged = 3,
};

/// Machine-readable outcome of one verb. `report` is the JSON document,
/// `table` holds CSV text for the grid verb.
struct CommandResult {
  int exit_code = kPass;
  nlohmann::json report;
  std::string table;
  std::string diagnostic;  // non-empty when the verb refused to run
};

CommandResult cmd_rank(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_simulate(const RunConfig& cfg);
CommandResult cmd_stap(const RunConfig& cfg);
CommandResult cmd_grid(const RunConfig& cfg);

CommandResult run(const RunConfig& cfg);

/// Single-line JSON diagnostic, as printed on stderr.
std::string diagnostic(const std::string& kind, const std::string& message, int exit_code);

/// Writes the result to its configured destination (file or `out`).
void emit(const RunConfig& cfg, const CommandResult& result, std::ostream& out);

}  // namespace evfield
