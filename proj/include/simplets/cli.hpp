#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simplets {

/// Runs the command-line interface in-process. `out` receives the
/// machine-readable payload, `diag` the logs. Exit codes: 0 success,
/// 1 usage, 2 I/O, 3 computation error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag);

}  // namespace simplets
