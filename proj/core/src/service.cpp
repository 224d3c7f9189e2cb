#include "expertquest/service.hpp"

#include <httplib.h>

#include <future>
#include <nlohmann/json.hpp>
#include <sys/socket.h>
#include <thread>

#include "expertquest/json_io.hpp"
#include "logging.hpp"

#ifndef EXPERTQUEST_VERSION
#define EXPERTQUEST_VERSION "0.0.0"
#endif

namespace expertquest::service {
namespace {

using nlohmann::json;

Response json_response(int status, const json& body) {
  return Response{status, body.dump(), {}};
}

Response error_response(int status, std::string_view message) {
  return json_response(status, json{{"error", message}});
}

std::optional<std::size_t> read_count(const json& request, const char* key,
                                      std::size_t fallback, std::string& error) {
  if (!request.contains(key) || request.at(key).is_null()) return fallback;
  const auto& v = request.at(key);
  if (!v.is_number_integer()) {
    error = std::string(key) + " must be an integer";
    return std::nullopt;
  }
  const auto n = v.get<std::int64_t>();
  if (n < 1 || n > static_cast<std::int64_t>(kMaxCount)) {
    error = std::string(key) + " must be within [1, " + std::to_string(kMaxCount) + "]";
    return std::nullopt;
  }
  return static_cast<std::size_t>(n);
}

}  // namespace

std::string_view version() noexcept { return EXPERTQUEST_VERSION; }

SearchService::SearchService(std::shared_ptr<const search::ExpertFinder> finder,
                             ServiceOptions options)
    : finder_(std::move(finder)), options_(std::move(options)) {
  if (!finder_) throw std::invalid_argument("SearchService: finder is required");
  auto names = json::array();
  for (const auto& e : finder_->languages().entries()) names.push_back(e.display_name);
  languages_body_ = names.dump();
}

Response SearchService::languages() const { return Response{200, languages_body_, {}}; }

Response SearchService::health() const {
  return json_response(200, json{{"status", "ok"},
                                 {"version", version()},
                                 {"backend", sources::to_string(finder_->sources().kind)}});
}

Response SearchService::search(std::string_view request_body) const {
  json request;
  try {
    request = json::parse(request_body);
  } catch (const json::exception&) {
    return error_response(400, "request body is not valid JSON");
  }
  if (!request.is_object() || !request.contains("language") ||
      !request.at("language").is_string()) {
    return error_response(400, "language (string) is required");
  }
  const auto language = request.at("language").get<std::string>();
  if (finder_->languages().find(language) == nullptr) {
    return error_response(400, "unknown language '" + language + "'");
  }
  std::string problem;
  const auto search_count =
      read_count(request, "search_count", search::kDefaultSearchCount, problem);
  if (!search_count) return error_response(400, problem);
  const auto timeline_count =
      read_count(request, "timeline_count", search::kDefaultTimelineCount, problem);
  if (!timeline_count) return error_response(400, problem);

  const auto params = finder_->params_for(language, *search_count, *timeline_count,
                                          options_.vector_size);
  const auto started = std::chrono::steady_clock::now();

  // The search runs on its own thread so a timeout can answer the client
  // while the pipeline finishes in the background.
  auto promise = std::make_shared<std::promise<std::vector<search::CandidateProfile>>>();
  auto future = promise->get_future();
  std::thread([finder = finder_, params, promise] {
    try {
      promise->set_value(finder->find_experts(params));
    } catch (...) {
      promise->set_exception(std::current_exception());
    }
  }).detach();

  if (future.wait_for(options_.search_timeout) != std::future_status::ready) {
    return error_response(504, "search timed out");
  }
  try {
    const auto ranked = future.get();
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    return json_response(
        200, search::search_response_json(language,
                                          static_cast<std::uint64_t>(elapsed.count()),
                                          ranked));
  } catch (const search::SearchFailed& e) {
    if (e.cause() == sources::ErrorKind::RateLimited) {
      Response r = error_response(429, e.what());
      if (e.retry_after()) {
        r.headers.emplace_back("Retry-After", std::to_string(e.retry_after()->count()));
      }
      return r;
    }
    return error_response(502, e.what());
  } catch (const std::invalid_argument& e) {
    return error_response(400, e.what());
  } catch (const std::exception& e) {
    detail::logger()->error("search for {} failed: {}", language, e.what());
    return error_response(500, "internal error");
  }
}

// --- HTTP binding -----------------------------------------------------------

struct HttpServer::Impl {
  std::shared_ptr<const SearchService> service;
  httplib::Server server;
  std::thread thread;
};

namespace {

void send(const Response& r, const std::string& cors_origin, httplib::Response& out) {
  out.status = r.status;
  for (const auto& [k, v] : r.headers) out.set_header(k, v);
  if (!cors_origin.empty()) out.set_header("Access-Control-Allow-Origin", cors_origin);
  out.set_content(r.body, "application/json");
}

}  // namespace

HttpServer::HttpServer(std::shared_ptr<const SearchService> service)
    : impl_(std::make_unique<Impl>()) {
  impl_->service = std::move(service);
  auto svc = impl_->service;
  const std::string origin = svc->options().cors_origin;
  auto& s = impl_->server;
  s.set_payload_max_length(1 << 20);
  s.set_read_timeout(std::chrono::seconds(30));
  s.set_write_timeout(std::chrono::seconds(30));
  // httplib defaults to SO_REUSEPORT, which lets a second server share a busy port.
  s.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });

  s.Get("/api/languages", [svc, origin](const httplib::Request&, httplib::Response& res) {
    send(svc->languages(), origin, res);
  });
  s.Post("/api/search", [svc, origin](const httplib::Request& req, httplib::Response& res) {
    send(svc->search(req.body), origin, res);
  });
  s.Get("/healthz", [svc, origin](const httplib::Request&, httplib::Response& res) {
    send(svc->health(), origin, res);
  });
  s.Options(R"(/.*)", [origin](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    if (!origin.empty()) res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port(host);
    if (port_ <= 0) throw std::runtime_error("cannot bind " + host);
  } else {
    if (!impl_->server.bind_to_port(host, port)) {
      throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    }
    port_ = port;
  }
  return port_;
}

void HttpServer::start() {
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::listen_blocking() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace expertquest::service
