#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace equiwitt::cli {

// Exit codes: 0 success, 1 computation error or failed verification, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace equiwitt::cli
