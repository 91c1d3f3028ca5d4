#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace idiomval {

/// Exit codes of run_cli.
enum ExitCode : int { exit_ok = 0, exit_invalid = 1, exit_usage = 2 };

/// Runs the command line (without the program name):
///
///   gen len|chunk|eq|leq|general-eq ...   print grammar text
///   verify [--budget N]                   oracle equivalence matrix, JSON
///   validate --message F [--paired R] [--profile P] [--json]
///   corpus --dir D --labels L [--profile P]
///
/// 0 = success / valid, 1 = invalid message or disagreement,
/// 2 = usage, I/O or parse error (message on err).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace idiomval
