#pragma once

// Subcommands of the setflow executable. Each returns the process exit code
// and reports failures on `err` as "error: <code>: <message>".

#include <filesystem>
#include <iosfwd>
#include <string>

namespace setflow::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int violation = 1;
inline constexpr int config_error = 2;
inline constexpr int integration_failure = 3;
inline constexpr int io_error = 4;
}  // namespace exit_code

/// Runs a scenario and writes <stem>.csv, <stem>_distance.csv (relax_to only)
/// and, unless disabled, <stem>_sets.svg and <stem>_support.svg.
int cmd_integrate(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

/// Reproduces the three-rectangle relaxation example into `outdir`.
int cmd_example(const std::filesystem::path& outdir, std::ostream& out, std::ostream& err);

/// kind is one of subtangent, osl, lipschitz, horizon.
int cmd_check(const std::string& kind, const std::filesystem::path& config, std::ostream& out, std::ostream& err);

int cmd_hausdorff(const std::filesystem::path& a, const std::filesystem::path& b, long n, std::ostream& out,
                  std::ostream& err);

}  // namespace setflow::cli
