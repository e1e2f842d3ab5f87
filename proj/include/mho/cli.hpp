#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mho::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode : int { kSuccess = 0, kInputError = 2, kNumericalError = 3 };

/// Parses args (without the program name), runs one subcommand and writes the
/// result to --out or to `out`. Diagnostics and usage go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mho::cli
