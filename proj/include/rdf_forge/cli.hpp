#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rdf_forge::cli {

enum ExitCode : int { kSuccess = 0, kDomainError = 1, kUsageError = 2 };

/// Runs the rdf-forge command line. `args[0]` is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rdf_forge::cli
