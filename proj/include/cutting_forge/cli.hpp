#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cutting_forge {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum ExitCode : int { kExitOk = 0, kExitVerification = 1, kExitUsage = 2 };

/// Runs one subcommand (decompose, cut, tailbound, moment, correlate,
/// incidence, shatter, render). Returns 0 on success, 1 when a result fails
/// its own verification, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

std::string library_version();

}  // namespace cutting_forge
