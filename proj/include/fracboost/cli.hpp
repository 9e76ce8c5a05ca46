#pragma once

#include <string>
#include <vector>

namespace fracboost {

// Runs one CLI invocation. `args` excludes the program name.
//
// Exit codes:
//   0  success
//   1  invalid flags or usage
//   2  missing or unreadable/unwritable files
//   3  schema or data contract violations
//   4  any other runtime failure
int dispatch(const std::vector<std::string>& args);

}  // namespace fracboost
