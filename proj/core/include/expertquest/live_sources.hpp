#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "expertquest/sources.hpp"

namespace expertquest::sources {

using Headers = std::vector<std::pair<std::string, std::string>>;

struct HttpResponse {
  int status = 0;
  Headers headers;  // names lowercased
  std::string body;

  /// First header with this (lowercase) name.
  std::optional<std::string> header(std::string_view name) const;
};

/// Connection-level failure: DNS, refused, TLS, timeout.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One HTTP round trip. Implementations throw TransportError when no
/// response was received.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse get(const std::string& base_url,
                           const std::string& target,
                           const Headers& headers) = 0;
  virtual HttpResponse post_form(const std::string& base_url,
                                 const std::string& target,
                                 const std::string& body,
                                 const Headers& headers) = 0;
};

/// cpp-httplib transport (http:// and https://).
class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(std::chrono::seconds timeout = std::chrono::seconds(30));

  HttpResponse get(const std::string& base_url, const std::string& target,
                   const Headers& headers) override;
  HttpResponse post_form(const std::string& base_url, const std::string& target,
                         const std::string& body,
                         const Headers& headers) override;

  /// Requests attempted by any instance in this process.
  static std::uint64_t requests_attempted() noexcept;

 private:
  std::chrono::seconds timeout_;
};

/// Wall clock abstraction so backoff and rate limiting are testable.
class Clock {
 public:
  using time_point = std::chrono::system_clock::time_point;
  virtual ~Clock() = default;
  virtual time_point now() const = 0;
  virtual void sleep_until(time_point t) = 0;
};

class SystemClock final : public Clock {
 public:
  time_point now() const override;
  void sleep_until(time_point t) override;
};

struct GatewayOptions {
  int max_retries = 3;
  std::chrono::seconds initial_backoff{1};
  /// Used for 429 responses that carry neither Retry-After nor a reset time.
  std::chrono::seconds default_rate_limit_wait{60};
};

/// Sends requests to one host with retry, exponential backoff and a
/// shared rate-limit gate.
///
/// - Connection failures and 5xx responses are retried after 1s, 2s, 4s...
///   and surface as BackendUnreachable once retries are exhausted.
/// - 429 / 420 (and 403 with x-ratelimit-remaining: 0) close the gate until
///   the time given by Retry-After or x-ratelimit-reset; the request is then
///   retried, and RateLimited is thrown once retries are exhausted.
/// - A response announcing x-ratelimit-remaining: 0 closes the gate until
///   its reset time even though it succeeded.
/// - 401 / 403 throw AuthFailure immediately.
/// - Any other status is returned to the caller.
///
/// No request is sent while the gate is closed. Thread-safe.
class HttpGateway {
 public:
  HttpGateway(std::string base_url, std::shared_ptr<HttpTransport> transport,
              std::shared_ptr<Clock> clock, GatewayOptions options = {});

  HttpResponse get(const std::string& target, const Headers& headers = {});
  HttpResponse post_form(const std::string& target, const std::string& body,
                         const Headers& headers = {});

  const std::string& base_url() const noexcept { return base_url_; }
  /// Earliest time the next request may be sent.
  Clock::time_point gate() const;

 private:
  HttpResponse send(const std::function<HttpResponse()>& request,
                    const std::string& what);
  void close_gate_until(Clock::time_point t);
  void wait_for_gate();

  std::string base_url_;
  std::shared_ptr<HttpTransport> transport_;
  std::shared_ptr<Clock> clock_;
  GatewayOptions options_;
  mutable std::mutex mu_;
  Clock::time_point blocked_until_{};
};

/// Contents of the credentials file:
///
///   {
///     "twitter":  {"bearer_token": "...", "consumer_key": "...",
///                  "consumer_secret": "...", "base_url": "https://api.twitter.com"},
///     "github":   {"token": "...", "base_url": "https://api.github.com"},
///     "dbpedia":  {"base_url": "https://dbpedia.org"}
///   }
///
/// Twitter needs either bearer_token or consumer_key + consumer_secret.
/// Every base_url is optional.
struct Credentials {
  struct Twitter {
    std::string bearer_token;
    std::string consumer_key;
    std::string consumer_secret;
    std::string base_url = "https://api.twitter.com";
  } twitter;
  struct GitHub {
    std::string token;
    std::string base_url = "https://api.github.com";
  } github;
  struct DBpedia {
    std::string base_url = "https://dbpedia.org";
  } dbpedia;

  static Credentials parse(std::string_view json_text);
  static Credentials load(const std::filesystem::path& path);
};

/// Twitter REST v1.1 search and user timeline.
class TwitterClient final : public MicroblogSource {
 public:
  TwitterClient(std::shared_ptr<HttpGateway> gateway, Credentials::Twitter creds);

  std::vector<Post> search_posts(std::string_view query,
                                 std::size_t count) override;
  std::vector<Post> get_timeline(std::string_view handle,
                                 std::size_t count) override;

 private:
  std::string bearer();

  std::shared_ptr<HttpGateway> gateway_;
  Credentials::Twitter creds_;
  std::mutex token_mu_;
  std::string token_;
};

/// GitHub REST v3 users, repositories and per-repository languages.
class GitHubClient final : public CodeHostSource {
 public:
  GitHubClient(std::shared_ptr<HttpGateway> gateway, Credentials::GitHub creds);

  std::optional<CodeHostUser> get_code_user(std::string_view handle) override;
  std::uint64_t get_repo_language_bytes(std::string_view handle,
                                        std::string_view language) override;

 private:
  Headers headers() const;

  std::shared_ptr<HttpGateway> gateway_;
  Credentials::GitHub creds_;
};

/// DBpedia Linked-Data JSON documents (/data/<Resource>.json).
class DbpediaClient final : public EncyclopediaSource {
 public:
  explicit DbpediaClient(std::shared_ptr<HttpGateway> gateway);

  Abstract get_abstract(std::string_view resource_id) override;

 private:
  std::shared_ptr<HttpGateway> gateway_;
};

/// Extracts the English abstract of `resource_id` from a DBpedia JSON
/// document. Throws ResourceNotFound when the document does not describe
/// the resource and MalformedDocument when it is not valid JSON.
Abstract parse_dbpedia_abstract(std::string_view resource_id,
                                std::string_view document);

struct LiveOptions {
  std::chrono::seconds timeout{30};
  GatewayOptions gateway;
  std::shared_ptr<Clock> clock;              // SystemClock when null
  std::shared_ptr<HttpTransport> transport;  // HttplibTransport when null
};

SourceSet make_live_sources(const Credentials& creds, LiveOptions options = {});

}  // namespace expertquest::sources
