#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tanaka {

// Exit codes: 0 success, 1 input or validation error, 2 indefinite verdict
// under --definite, 3 internal inconsistency.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tanaka
