#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cdna::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationError = 1,
    kCryptoMismatch = 2,
};

/// Runs one command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdna::cli
