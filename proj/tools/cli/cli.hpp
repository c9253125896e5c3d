#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sublinear::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kValidationError = 2,
    kDataError = 3,
    kInternalError = 4,
};

/// Runs one command. `args` excludes the program name. Results go to the
/// --output file (written via temp file + rename) or to `out`; errors are a
/// single line on `err`:
///   error: code=<exit code> kind=<kind> message="<text>"
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace sublinear::cli
