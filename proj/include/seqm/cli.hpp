#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seqm {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_violation = 1,
    exit_validation = 2,
    exit_budget = 3,
};

/// Runs the tool on `args` (without the program name). Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
///
/// SEQM_BUDGET and SEQM_WORKERS in the environment provide defaults for
/// --budget and --workers.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqm
