#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "qhorn/session.hpp"

namespace qhorn {

/// HTTP facade over a SessionManager:
///   POST /api/sessions                  create
///   GET  /api/sessions/{id}             state
///   POST /api/sessions/{id}/answer      {"answer": true|false}
///   POST /api/sessions/{id}/rollback    {"to": i}
///   GET  /api/sessions/{id}/transcript
///   GET  /api/sessions/{id}/result
/// Static assets, when a directory is given, are served from "/".
class HttpServer {
 public:
  explicit HttpServer(SessionManager& sessions, std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to `port` (0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void run();
  /// Blocks until run() is accepting connections.
  void wait_until_ready();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qhorn
