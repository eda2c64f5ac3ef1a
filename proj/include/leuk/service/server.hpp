#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "leuk/service/pipeline.hpp"

namespace httplib {
class Server;
}

namespace leuk::service {

struct ServiceConfig {
    int port = 8080;
    std::filesystem::path model_path;
    std::optional<std::filesystem::path> cnn_path;
    std::size_t max_body_bytes = 8 * 1024 * 1024;
    std::string bind_address = "127.0.0.1";

    /// Throws PreconditionError for a port outside 1..65535 or max_body_bytes < 1024.
    void validate() const;
};

struct HttpResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// Endpoint logic without the transport, shared by the server and tests.
HttpResponse handle_classify(const InferencePipeline& pipeline, std::string_view body);
HttpResponse handle_health(const InferencePipeline& pipeline);

/// HTTP/1.1 front end. Requests run on the transport's worker threads
/// against the shared immutable pipeline.
class ClassificationServer {
public:
    ClassificationServer(std::shared_ptr<const InferencePipeline> pipeline, ServiceConfig config);
    ~ClassificationServer();
    ClassificationServer(const ClassificationServer&) = delete;
    ClassificationServer& operator=(const ClassificationServer&) = delete;

    /// Binds the configured port. Returns false when the port is unavailable.
    bool bind();
    /// Binds an OS-chosen port and returns it (tests).
    int bind_ephemeral();
    /// Blocks serving requests until stop().
    void serve();
    /// Stops accepting; requests already being handled run to completion.
    void stop();
    bool is_running() const;
    int port() const noexcept { return port_; }

private:
    std::shared_ptr<const InferencePipeline> pipeline_;
    ServiceConfig config_;
    std::unique_ptr<httplib::Server> server_;
    int port_ = 0;
};

}  // namespace leuk::service
