#pragma once
/*
 * Batch front door. run_cli takes the argument list without the program name
 * and writes the rendered report to out, diagnostics to err.
 *
 * Exit codes: 0 success, 1 a --expect predicate came out false, 2 input
 * error (bad flags, malformed documents, out-of-contract data, overflow),
 * 3 a theorem-backed internal check failed.
 */

#include <ostream>
#include <string>
#include <vector>

namespace jacstab {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace jacstab
