#pragma once

#include <ostream>
#include <span>
#include <string>

namespace abc::cli {

/// Runs one command line. args excludes the program name.
/// Exit codes: 0 success, 1 runtime failure, 2 usage error.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace abc::cli
