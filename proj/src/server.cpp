#include "cascade/server.hpp"

#include <cstdlib>
#include <stdexcept>

#include "httplib.h"

#include "cascade/error.hpp"

namespace cascade {

int resolve_port(std::optional<int> flag) {
  if (flag) return *flag;
  const char* env = std::getenv("CASCADE_OPT_PORT");
  if (!env || !*env) return 8080;
  const std::string text(env);
  if (text.find_first_not_of("0123456789") != std::string::npos ||
      text.size() > 5 || std::stoi(text) > 65535) {
    throw Error(ErrorCode::ParseError, "CASCADE_OPT_PORT=" + text + " is not a port");
  }
  return std::stoi(text);
}

struct HttpServer::Impl {
  SessionService& service;
  httplib::Server server;

  explicit Impl(SessionService& s) : service(s) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      const ServiceResponse out = service.handle(req.method, req.path, req.body);
      res.status = out.status;
      if (out.status != 204) res.set_content(out.body.dump(), "application/json");
    };
    const char* any = R"(/.*)";
    server.Get(any, forward);
    server.Post(any, forward);
    server.Delete(any, forward);
    server.Options(any, [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
    server.set_post_routing_handler([](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
  }
};

HttpServer::HttpServer(SessionService& service)
    : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::start() {
  thread_ = std::thread([this] { listen(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace cascade
