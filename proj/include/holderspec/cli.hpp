#pragma once

// Subcommand dispatch for the holderspec executable.

#include <ostream>
#include <string>
#include <vector>

namespace holderspec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitConfig = 2;

// Runs `argv` (argv[0] is the program name). CSV goes to --out or `out`;
// the one-line summary goes to `out` when --out names a file and to `err`
// otherwise, so CSV on stdout stays clean.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

}  // namespace holderspec
