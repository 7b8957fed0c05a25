#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dpp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Environment variable naming the directory used when --output is absent.
inline constexpr const char* kOutputDirEnv = "DPP_OUTPUT_DIR";

/// Runs the command line `args` (args[0] is the program name). Tables go to
/// `out` unless an output file is selected; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.17g" in the C locale.
std::string format_double(double value);

}  // namespace dpp::cli
