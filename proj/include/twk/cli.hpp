#pragma once

#include <string>
#include <vector>

namespace twk {

/// Command dispatch for the twk tool.  Exit codes: 0 success, 1
/// mathematical failure, 2 input/usage error.
int run_cli(const std::vector<std::string>& args);

}  // namespace twk
