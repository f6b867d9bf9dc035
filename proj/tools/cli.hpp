#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace causal::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kRefused = 3,
  kOverflow = 4,
};

// Runs the causalpaths command line. args excludes the program name.
// Input "-" reads from `in`; output without --output goes to `out`;
// summaries and errors go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace causal::cli
