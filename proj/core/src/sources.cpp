#include "expertquest/sources.hpp"

#include <array>

namespace expertquest::sources {
namespace {

constexpr std::array<std::pair<ErrorKind, std::string_view>, 6> kErrorNames{{
    {ErrorKind::BackendUnreachable, "backend-unreachable"},
    {ErrorKind::RateLimited, "rate-limited"},
    {ErrorKind::AuthFailure, "auth-failure"},
    {ErrorKind::UserNotFound, "user-not-found"},
    {ErrorKind::ResourceNotFound, "resource-not-found"},
    {ErrorKind::MalformedDocument, "malformed-document"},
}};

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept {
  for (const auto& [k, name] : kErrorNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ErrorKind> parse_error_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kErrorNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(BackendKind kind) noexcept {
  return kind == BackendKind::Live ? "live" : "fixture";
}

SourceError::SourceError(ErrorKind kind, const std::string& message,
                         std::optional<std::chrono::seconds> retry_after)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      retry_after_(retry_after) {}

std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(text.size() * 3);
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    const bool unreserved = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                            (c >= '0' && c <= '9') || c == '-' || c == '.' ||
                            c == '_' || c == '~';
    if (unreserved) {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0x0F]);
    }
  }
  return out;
}

std::string percent_decode(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size()) {
      const int hi = hex_value(text[i + 1]);
      const int lo = hex_value(text[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(text[i]);
  }
  return out;
}

std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool iequals_ascii(std::string_view a, std::string_view b) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

}  // namespace expertquest::sources
