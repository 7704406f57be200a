#pragma once

// Command dispatch for the findim executable.

#include <ostream>
#include <string>
#include <vector>

namespace findim {

inline constexpr const char* kVersion = "0.1.0";

/// args excludes the program name. Exit codes: 0 decided, 1 input error,
/// 2 inconclusive, 3 internal cap or validation failure.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace findim
