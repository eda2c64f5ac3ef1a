#include "leuk/service/server.hpp"

#include <cstddef>
#include <span>

#include "httplib.h"
#include "json.hpp"
#include "leuk/core/error.hpp"
#include "leuk/core/log.hpp"

namespace leuk::service {
namespace {

std::string error_body(std::string_view message) {
    nlohmann::ordered_json j;
    j["error"] = message;
    return j.dump();
}

void send(httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
}

void method_not_allowed(const httplib::Request& req, httplib::Response& res, const char* allow) {
    res.set_header("Allow", allow);
    send(res, {405, error_body("method " + req.method + " not allowed on " + req.path)});
}

}  // namespace

void ServiceConfig::validate() const {
    if (port < 1 || port > 65535) throw PreconditionError("port must lie in 1..65535, got " + std::to_string(port));
    if (max_body_bytes < 1024) throw PreconditionError("max body size must be at least 1024 bytes");
}

HttpResponse handle_classify(const InferencePipeline& pipeline, std::string_view body) {
    try {
        const auto bytes = std::as_bytes(std::span<const char>(body.data(), body.size()));
        const auto result = pipeline.classify_pnm(bytes);
        return {200, pipeline.result_json(result)};
    } catch (const FormatError& e) {
        return {400, error_body(e.what())};
    } catch (const PreconditionError& e) {
        return {400, error_body(e.what())};
    } catch (const ShapeError& e) {
        return {400, error_body(e.what())};
    } catch (const std::exception& e) {
        log::error(std::string("classify failed: ") + e.what());
        return {500, error_body("internal error")};
    }
}

HttpResponse handle_health(const InferencePipeline& pipeline) {
    nlohmann::ordered_json j;
    j["status"] = "ok";
    j["model_id"] = pipeline.model_id();
    return {200, j.dump()};
}

ClassificationServer::ClassificationServer(std::shared_ptr<const InferencePipeline> pipeline, ServiceConfig config)
    : pipeline_(std::move(pipeline)), config_(std::move(config)), server_(std::make_unique<httplib::Server>()) {
    if (!pipeline_) throw PreconditionError("server needs a loaded pipeline");
    if (config_.max_body_bytes < 1024) throw PreconditionError("max body size must be at least 1024 bytes");
    server_->set_payload_max_length(config_.max_body_bytes);

    auto pipeline_ref = pipeline_;
    server_->Post("/v1/classify", [pipeline_ref](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_classify(*pipeline_ref, req.body));
        log::debug("POST /v1/classify -> " + std::to_string(res.status));
    });
    server_->Get("/v1/health", [pipeline_ref](const httplib::Request&, httplib::Response& res) {
        send(res, handle_health(*pipeline_ref));
    });
    const auto not_classify = [](const httplib::Request& req, httplib::Response& res) {
        method_not_allowed(req, res, "POST");
    };
    server_->Get("/v1/classify", not_classify);
    server_->Put("/v1/classify", not_classify);
    server_->Delete("/v1/classify", not_classify);
    server_->Patch("/v1/classify", not_classify);
    server_->Options("/v1/classify", not_classify);
    const auto not_health = [](const httplib::Request& req, httplib::Response& res) {
        method_not_allowed(req, res, "GET, HEAD");
    };
    server_->Post("/v1/health", not_health);
    server_->Put("/v1/health", not_health);
    server_->Delete("/v1/health", not_health);
    server_->Patch("/v1/health", not_health);
    server_->Options("/v1/health", not_health);
}

ClassificationServer::~ClassificationServer() { stop(); }

bool ClassificationServer::bind() {
    config_.validate();
    if (!server_->bind_to_port(config_.bind_address, config_.port)) return false;
    port_ = config_.port;
    return true;
}

int ClassificationServer::bind_ephemeral() {
    port_ = server_->bind_to_any_port(config_.bind_address);
    if (port_ <= 0) throw Error("could not bind an ephemeral port on " + config_.bind_address);
    return port_;
}

void ClassificationServer::serve() {
    log::info("serving on " + config_.bind_address + ":" + std::to_string(port_) + " (model " +
              pipeline_->model_id() + ")");
    server_->listen_after_bind();
}

void ClassificationServer::stop() {
    if (server_) server_->stop();
}

bool ClassificationServer::is_running() const { return server_->is_running(); }

}  // namespace leuk::service
