#ifndef INFOORDER_CLI_HPP
#define INFOORDER_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace infoorder {

/// Exit codes: 0 the relation holds or the computation succeeded, 1 the
/// relation is certified false, 2 input error.
enum ExitCode : int { kHolds = 0, kFails = 1, kInputError = 2 };

/// Runs one subcommand; `args` excludes the program name. The result
/// document goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infoorder

#endif  // INFOORDER_CLI_HPP
