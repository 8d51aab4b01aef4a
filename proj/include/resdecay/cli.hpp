#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace resdecay::cli {

/// Exit codes: 0 success, 1 invalid input, 2 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

/// Runs one command line. `args` excludes the program name. Results go to
/// `out` (or the --out file, written only after the run succeeds); errors go
/// to `err` as one JSON line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace resdecay::cli
