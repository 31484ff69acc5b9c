#pragma once

#include <string>
#include <vector>

namespace tsyb {

inline constexpr const char* kVersion = "0.1.0";

// Runs one CLI invocation (argv[0] is the program name). Exit codes:
// 0 success, 1 I/O or runtime failure, 2 usage or validation failure.
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args);

}  // namespace tsyb
