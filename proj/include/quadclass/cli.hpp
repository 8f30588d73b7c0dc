#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace quadclass::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifiedFalse = 1,   // divisibility false or an asserted member failed
    kInputError = 2,
    kResourceCap = 3,
    kInconsistency = 4,   // internal cross-check failed
};

/// Runs the command line `args` (without the program name); returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quadclass::cli
