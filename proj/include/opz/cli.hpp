#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opz::cli {

enum ExitCode : int {
    kStrictlyIncreasing = 0,
    kViolated = 1,
    kInconclusive = 2,
    kEngineError = 3,
    kUsageError = 4,
};

/// Runs the command line `args` (args[0] is the program name). Results go to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace opz::cli
