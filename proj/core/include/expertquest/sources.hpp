#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace expertquest::sources {

struct Post {
  std::string author_handle;
  std::string author_display_name;
  std::uint64_t author_follower_count = 0;
  std::string text;

  friend bool operator==(const Post&, const Post&) = default;
};

struct CodeHostUser {
  std::string handle;
  std::uint64_t follower_count = 0;
  std::string profile_url;

  friend bool operator==(const CodeHostUser&, const CodeHostUser&) = default;
};

/// Bytes of code per language for one repository.
using RepoLanguageStats = std::map<std::string, std::uint64_t>;

struct Abstract {
  std::string resource_id;
  std::string text;

  friend bool operator==(const Abstract&, const Abstract&) = default;
};

enum class ErrorKind {
  BackendUnreachable,
  RateLimited,
  AuthFailure,
  UserNotFound,
  ResourceNotFound,
  MalformedDocument,
};

std::string_view to_string(ErrorKind kind) noexcept;
/// Parses the kebab-case names produced by to_string.
std::optional<ErrorKind> parse_error_kind(std::string_view name) noexcept;

class SourceError : public std::runtime_error {
 public:
  SourceError(ErrorKind kind, const std::string& message,
              std::optional<std::chrono::seconds> retry_after = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  /// Set for RateLimited when the backend said how long to wait.
  std::optional<std::chrono::seconds> retry_after() const noexcept {
    return retry_after_;
  }

 private:
  ErrorKind kind_;
  std::optional<std::chrono::seconds> retry_after_;
};

/// Microblog search and user timelines.
class MicroblogSource {
 public:
  virtual ~MicroblogSource() = default;

  /// At most `count` posts in backend order.
  virtual std::vector<Post> search_posts(std::string_view query,
                                         std::size_t count) = 0;
  /// At most `count` posts, newest first. UserNotFound for unknown handles.
  virtual std::vector<Post> get_timeline(std::string_view handle,
                                         std::size_t count) = 0;
};

/// Code-hosting user records and repository language statistics.
class CodeHostSource {
 public:
  virtual ~CodeHostSource() = default;

  /// nullopt when no such account exists. Lookup is case-insensitive.
  virtual std::optional<CodeHostUser> get_code_user(std::string_view handle) = 0;
  /// Sum over all of the user's repositories of bytes in `language`
  /// (compared case-insensitively).
  virtual std::uint64_t get_repo_language_bytes(std::string_view handle,
                                                std::string_view language) = 0;
};

/// Linked-Data encyclopedia abstracts.
class EncyclopediaSource {
 public:
  virtual ~EncyclopediaSource() = default;

  virtual Abstract get_abstract(std::string_view resource_id) = 0;
};

enum class BackendKind { Live, Fixture };

std::string_view to_string(BackendKind kind) noexcept;

/// The three data sources a search needs. Instances are shared across
/// concurrent searches; implementations synchronize internally.
struct SourceSet {
  std::shared_ptr<MicroblogSource> microblog;
  std::shared_ptr<CodeHostSource> codehost;
  std::shared_ptr<EncyclopediaSource> encyclopedia;
  BackendKind kind = BackendKind::Fixture;
};

/// Percent-encodes every byte outside [A-Za-z0-9-._~].
std::string percent_encode(std::string_view text);
std::string percent_decode(std::string_view text);

/// ASCII lowercase.
std::string to_lower_ascii(std::string_view text);
bool iequals_ascii(std::string_view a, std::string_view b) noexcept;

}  // namespace expertquest::sources
