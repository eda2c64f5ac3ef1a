#include "leuk/core/log.hpp"

#include <cstdlib>
#include <memory>
#include <mutex>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace leuk::log {
namespace {

spdlog::logger& logger() {
    static std::shared_ptr<spdlog::logger> instance = [] {
        auto l = spdlog::stderr_color_mt("leuk");
        l->set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
        l->set_level(spdlog::level::info);
        return l;
    }();
    return *instance;
}

}  // namespace

void init_from_env() {
    const char* env = std::getenv("HOSVD_LOG");
    const std::string level = env ? env : "info";
    if (level == "error") {
        logger().set_level(spdlog::level::err);
    } else if (level == "debug") {
        logger().set_level(spdlog::level::debug);
    } else {
        logger().set_level(spdlog::level::info);
    }
}

void debug(std::string_view message) { logger().debug("{}", message); }
void info(std::string_view message) { logger().info("{}", message); }
void warn(std::string_view message) { logger().warn("{}", message); }
void error(std::string_view message) { logger().error("{}", message); }

}  // namespace leuk::log
