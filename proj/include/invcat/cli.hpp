#ifndef INVCAT_CLI_HPP
#define INVCAT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include "invcat/error.hpp"

namespace invcat {

/// Exit status of a command.
enum ExitCode { Pass = 0, CheckFailed = 1, InputError = 2 };

/// Whether an error kind reports malformed input rather than a failed check.
bool is_input_error(ErrorKind kind);

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err` as JSON.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace invcat

#endif
