#pragma once

#include <string>
#include <vector>

namespace hypcyl::cli {

/// Exit codes: 0 ok, 1 numeric/runtime failure, 2 usage error.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace hypcyl::cli
