#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqdeg {

// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,           // success, or the checked object is valid
    exit_negative = 1,     // invalid verdict, or the searched object does not exist
    exit_precondition = 2, // budget exhausted, precondition failure, broken invariant
    exit_parse = 3,        // malformed file or command line
};

// Runs one command. `args` excludes the program name. A file argument "-"
// reads `in`. Results go to `out`; failures print {"code", "message",
// "context"} to `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace eqdeg
