#include <httplib.h>

#include <atomic>
#include <charconv>
#include <thread>

#include "expertquest/live_sources.hpp"

namespace expertquest::sources {
namespace {

std::atomic<std::uint64_t> g_requests_attempted{0};

// "https://host:443/prefix" -> {"https://host:443", "/prefix"}
std::pair<std::string, std::string> split_base(const std::string& base_url) {
  const auto scheme_end = base_url.find("://");
  const auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const auto path_start = base_url.find('/', host_start);
  if (path_start == std::string::npos) return {base_url, ""};
  std::string prefix = base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {base_url.substr(0, path_start), prefix};
}

HttpResponse convert(const httplib::Result& result, const std::string& url) {
  if (!result) {
    throw TransportError(url + ": " + httplib::to_string(result.error()));
  }
  HttpResponse out;
  out.status = result->status;
  out.body = result->body;
  for (const auto& [name, value] : result->headers) {
    out.headers.emplace_back(to_lower_ascii(name), value);
  }
  return out;
}

httplib::Headers to_httplib(const Headers& headers) {
  httplib::Headers out;
  for (const auto& [k, v] : headers) out.emplace(k, v);
  return out;
}

std::optional<std::int64_t> parse_int(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  std::int64_t value = 0;
  const char* begin = text->data();
  const char* end = begin + text->size();
  while (begin < end && *begin == ' ') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr == begin) return std::nullopt;
  return value;
}

std::optional<std::string> first_header(const HttpResponse& r,
                                        std::initializer_list<std::string_view> names) {
  for (auto name : names) {
    if (auto v = r.header(name)) return v;
  }
  return std::nullopt;
}

std::optional<Clock::time_point> reset_time(const HttpResponse& r) {
  const auto epoch = parse_int(first_header(r, {"x-rate-limit-reset", "x-ratelimit-reset"}));
  if (!epoch) return std::nullopt;
  return Clock::time_point(std::chrono::seconds(*epoch));
}

bool quota_exhausted(const HttpResponse& r) {
  const auto remaining =
      parse_int(first_header(r, {"x-rate-limit-remaining", "x-ratelimit-remaining"}));
  return remaining && *remaining <= 0;
}

}  // namespace

std::optional<std::string> HttpResponse::header(std::string_view name) const {
  for (const auto& [k, v] : headers) {
    if (iequals_ascii(k, name)) return v;
  }
  return std::nullopt;
}

HttplibTransport::HttplibTransport(std::chrono::seconds timeout) : timeout_(timeout) {}

std::uint64_t HttplibTransport::requests_attempted() noexcept {
  return g_requests_attempted.load();
}

HttpResponse HttplibTransport::get(const std::string& base_url,
                                   const std::string& target,
                                   const Headers& headers) {
  ++g_requests_attempted;
  const auto [origin, prefix] = split_base(base_url);
  httplib::Client client(origin);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  return convert(client.Get(prefix + target, to_httplib(headers)), base_url + target);
}

HttpResponse HttplibTransport::post_form(const std::string& base_url,
                                         const std::string& target,
                                         const std::string& body,
                                         const Headers& headers) {
  ++g_requests_attempted;
  const auto [origin, prefix] = split_base(base_url);
  httplib::Client client(origin);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  return convert(client.Post(prefix + target, to_httplib(headers), body,
                             "application/x-www-form-urlencoded;charset=UTF-8"),
                 base_url + target);
}

Clock::time_point SystemClock::now() const { return std::chrono::system_clock::now(); }

void SystemClock::sleep_until(time_point t) { std::this_thread::sleep_until(t); }

HttpGateway::HttpGateway(std::string base_url,
                         std::shared_ptr<HttpTransport> transport,
                         std::shared_ptr<Clock> clock, GatewayOptions options)
    : base_url_(std::move(base_url)),
      transport_(std::move(transport)),
      clock_(std::move(clock)),
      options_(options) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

Clock::time_point HttpGateway::gate() const {
  std::lock_guard lock(mu_);
  return blocked_until_;
}

void HttpGateway::close_gate_until(Clock::time_point t) {
  std::lock_guard lock(mu_);
  if (t > blocked_until_) blocked_until_ = t;
}

void HttpGateway::wait_for_gate() {
  // Another thread may extend the gate while we sleep; re-check.
  for (;;) {
    const auto until = gate();
    if (clock_->now() >= until) return;
    clock_->sleep_until(until);
  }
}

HttpResponse HttpGateway::get(const std::string& target, const Headers& headers) {
  return send([&] { return transport_->get(base_url_, target, headers); },
              "GET " + target);
}

HttpResponse HttpGateway::post_form(const std::string& target,
                                    const std::string& body,
                                    const Headers& headers) {
  return send([&] { return transport_->post_form(base_url_, target, body, headers); },
              "POST " + target);
}

HttpResponse HttpGateway::send(const std::function<HttpResponse()>& request,
                               const std::string& what) {
  for (int attempt = 0;; ++attempt) {
    const bool last_attempt = attempt >= options_.max_retries;
    const auto backoff = options_.initial_backoff * (1 << std::min(attempt, 20));

    wait_for_gate();
    HttpResponse response;
    try {
      response = request();
    } catch (const TransportError& e) {
      if (last_attempt) {
        throw SourceError(ErrorKind::BackendUnreachable, what + ": " + e.what());
      }
      clock_->sleep_until(clock_->now() + backoff);
      continue;
    }

    const bool limited =
        response.status == 429 || response.status == 420 ||
        (response.status == 403 && quota_exhausted(response));
    if (limited) {
      Clock::time_point until = clock_->now() + options_.default_rate_limit_wait;
      if (const auto secs = parse_int(response.header("retry-after"))) {
        until = clock_->now() + std::chrono::seconds(std::max<std::int64_t>(*secs, 0));
      } else if (const auto reset = reset_time(response)) {
        until = *reset;
      }
      close_gate_until(until);
      if (last_attempt) {
        const auto wait = std::chrono::ceil<std::chrono::seconds>(until - clock_->now());
        throw SourceError(ErrorKind::RateLimited, what,
                          std::max(wait, std::chrono::seconds(0)));
      }
      continue;
    }
    if (quota_exhausted(response)) {
      if (const auto reset = reset_time(response)) close_gate_until(*reset);
    }
    if (response.status == 401 || response.status == 403) {
      throw SourceError(ErrorKind::AuthFailure,
                        what + ": HTTP " + std::to_string(response.status));
    }
    if (response.status >= 500) {
      if (last_attempt) {
        throw SourceError(ErrorKind::BackendUnreachable,
                          what + ": HTTP " + std::to_string(response.status));
      }
      clock_->sleep_until(clock_->now() + backoff);
      continue;
    }
    return response;
  }
}

}  // namespace expertquest::sources
