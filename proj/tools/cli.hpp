#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace homlab::cli {

/// Runs one homlab invocation. `args` excludes the program name. Returns the
/// process exit code: 0 on success, 1 on a library error, 2 on a usage or
/// parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// A JSON report with its timing field removed, for byte comparison of
/// repeated runs.
std::string strip_timing(const std::string& report);

}  // namespace homlab::cli
