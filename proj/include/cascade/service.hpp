#pragma once

// Session API, independent of the HTTP transport:
//
//   POST   /sessions                     problem document -> 201 + view
//   GET    /sessions/{id}                -> view
//   POST   /sessions/{id}/sorting-set    {"index": 2 | "auto"}
//   POST   /sessions/{id}/solve          {"init": [...]} (optional)
//   POST   /sessions/{id}/slacks         {"l": [...], "r": [...]}
//   DELETE /sessions/{id}                -> 204
//
// 400 malformed body, 404 unknown session or route, 405 bad method,
// 409 call not legal in the current phase, 422 domain errors (including
// DmBoundsViolation with the offending component).

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "cascade/driver.hpp"
#include "cascade/error.hpp"
#include "cascade/problem_io.hpp"

namespace cascade {

struct ServiceResponse {
  int status = 200;
  Json body;  // null for 204
};

struct ServiceOptions {
  /// Sessions untouched for longer than this are dropped.
  std::chrono::milliseconds idle_expiry = std::chrono::hours(1);
  /// Used when the problem document has no config.bigM.
  Rational default_big_m = Rational(1000000);
  std::function<std::chrono::steady_clock::time_point()> clock =
      [] { return std::chrono::steady_clock::now(); };
};

/// Full view of one session (phase, level, bounds, compromises, geometry).
Json session_view(const std::string& id, const Session& session);

/// JSON error body: {"error": name, "message": ..., "step": ...} and for
/// DmBoundsViolation a "violation" object.
Json error_body(const Error& error);

class SessionService {
 public:
  explicit SessionService(ServiceOptions options = {});

  /// Thread-safe. Calls on one session are serialized.
  ServiceResponse handle(std::string_view method, std::string_view path,
                         std::string_view body);

  std::size_t session_count() const;

  /// Drops idle sessions; also done on every request.
  void expire_idle();

 private:
  struct Entry {
    std::mutex mutex;
    std::unique_ptr<Session> session;
    std::chrono::steady_clock::time_point last_used;
  };

  ServiceResponse create(std::string_view body);
  std::shared_ptr<Entry> find(const std::string& id);
  bool erase(const std::string& id);
  void expire_idle_locked();

  ServiceOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace cascade
