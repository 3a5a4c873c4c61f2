#pragma once

// Command-line front end. Exit codes: 0 success/true, 1 identity false or
// validation failure, 2 usage or input error, 3 internal error.

#include <ostream>
#include <string>
#include <vector>

namespace jbgp {

enum ExitCode { kExitOk = 0, kExitFalse = 1, kExitUsage = 2, kExitInternal = 3 };

/// JB_MAX_DEGREE, default 12.
unsigned max_degree_from_env();

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace jbgp
