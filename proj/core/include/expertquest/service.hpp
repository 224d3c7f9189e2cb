#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "expertquest/search.hpp"

namespace expertquest::service {

inline constexpr std::size_t kMaxCount = 100;

struct ServiceOptions {
  std::string cors_origin = "*";
  std::chrono::seconds search_timeout{300};
  std::size_t vector_size = textpipe::kDefaultVectorSize;
};

struct Response {
  int status = 200;
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
};

/// Request handling independent of the HTTP server, so handlers can be
/// exercised directly.
class SearchService {
 public:
  SearchService(std::shared_ptr<const search::ExpertFinder> finder,
                ServiceOptions options = {});

  /// GET /api/languages
  Response languages() const;
  /// POST /api/search
  Response search(std::string_view request_body) const;
  /// GET /healthz
  Response health() const;

  const ServiceOptions& options() const noexcept { return options_; }

 private:
  std::shared_ptr<const search::ExpertFinder> finder_;
  ServiceOptions options_;
  std::string languages_body_;
};

/// Binds an HTTP server to `host:port` (port 0 picks a free port) and
/// serves SearchService on a background thread.
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<const SearchService> service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Throws std::runtime_error when the address cannot be bound.
  int bind(const std::string& host, int port);
  /// Serves on a background thread until stop().
  void start();
  /// Serves on the calling thread until stop() is called elsewhere.
  void listen_blocking();
  void stop();
  int port() const noexcept { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

std::string_view version() noexcept;

}  // namespace expertquest::service
