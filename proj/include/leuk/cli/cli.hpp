#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace leuk::cli {

/// Exit codes: 0 success, 1 usage error (usage on `err`), 2 runtime error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace leuk::cli
