#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linfty::cli {

inline constexpr int schema_version = 1;

enum ExitCode : int { exit_ok = 0, exit_domain = 1, exit_usage = 2 };

// Parses and runs one command. Results go to `out`; diagnostics and usage
// text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linfty::cli
