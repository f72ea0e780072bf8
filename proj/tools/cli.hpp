#pragma once

// Command dispatch for the blockpart executable, kept in a library so tests
// can run commands in-process with string streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace blockpart::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kParseError = 2,
  kBoundError = 3,
  kSolverError = 4,
};

// args excludes the program name. `in` backs FILE arguments given as "-" or
// omitted.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace blockpart::cli
