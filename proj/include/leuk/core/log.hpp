#pragma once

#include <string_view>

// Thin facade over spdlog writing to standard error. Verbosity comes from
// HOSVD_LOG ∈ {error, info, debug}; default is info.
namespace leuk::log {

void init_from_env();

void debug(std::string_view message);
void info(std::string_view message);
void warn(std::string_view message);
void error(std::string_view message);

}  // namespace leuk::log
