#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wrtkit::cli {

// Exit codes: 0 success, 1 usage or validation error, 2 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace wrtkit::cli
