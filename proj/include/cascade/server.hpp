#pragma once

#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "cascade/service.hpp"

namespace cascade {

/// `--port` if given, else CASCADE_OPT_PORT, else 8080. Throws ParseError on
/// a malformed environment value.
int resolve_port(std::optional<int> flag);

/// HTTP transport for a SessionService.
class HttpServer {
 public:
  explicit HttpServer(SessionService& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port; throws on failure.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  /// listen() on a background thread.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
};

}  // namespace cascade
