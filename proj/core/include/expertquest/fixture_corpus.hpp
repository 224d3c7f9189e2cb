#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <variant>

#include "expertquest/sources.hpp"

namespace expertquest::sources {

/// Per-operation call counters, for tests that bound request volume.
struct CallCounts {
  std::uint64_t search_posts = 0;
  std::uint64_t get_timeline = 0;
  std::uint64_t get_code_user = 0;
  std::uint64_t get_repo_language_bytes = 0;
  std::uint64_t get_abstract = 0;

  std::uint64_t total() const noexcept {
    return search_posts + get_timeline + get_code_user +
           get_repo_language_bytes + get_abstract;
  }
};

/// Offline backend reading a recorded corpus directory:
///
///   searches/<percent-encoded query>.json     array of Post
///   timelines/<lowercase handle>.json         array of Post, newest first
///   users/<lowercase handle>.json             CodeHostUser
///   repos/<lowercase handle>.json             array of {language: bytes}
///   abstracts/<percent-encoded resource>.json Abstract
///
/// Any file may instead hold {"error": "<kind>", "retry_after_seconds": n}
/// to replay a recorded failure; the call then throws SourceError.
///
/// Everything is loaded eagerly; the corpus is immutable afterwards. A
/// missing search file means the search returned nothing; a missing repos
/// file means the user has no repositories.
class FixtureCorpus final : public MicroblogSource,
                            public CodeHostSource,
                            public EncyclopediaSource {
 public:
  /// Throws std::runtime_error when `root` is not a directory and
  /// SourceError(MalformedDocument) when a file cannot be parsed.
  static std::shared_ptr<FixtureCorpus> load(const std::filesystem::path& root);

  std::vector<Post> search_posts(std::string_view query,
                                 std::size_t count) override;
  std::vector<Post> get_timeline(std::string_view handle,
                                 std::size_t count) override;
  std::optional<CodeHostUser> get_code_user(std::string_view handle) override;
  std::uint64_t get_repo_language_bytes(std::string_view handle,
                                        std::string_view language) override;
  Abstract get_abstract(std::string_view resource_id) override;

  CallCounts call_counts() const noexcept;
  void reset_call_counts() noexcept;

  /// SourceSet backed by this corpus for all three sources.
  static SourceSet as_sources(std::shared_ptr<FixtureCorpus> corpus);

 private:
  struct RecordedError {
    ErrorKind kind;
    std::optional<std::chrono::seconds> retry_after;
  };
  template <typename T>
  using Entry = std::variant<T, RecordedError>;

  FixtureCorpus() = default;

  std::map<std::string, Entry<std::vector<Post>>> searches_;
  std::map<std::string, Entry<std::vector<Post>>> timelines_;
  std::map<std::string, Entry<CodeHostUser>> users_;
  std::map<std::string, Entry<std::vector<RepoLanguageStats>>> repos_;
  std::map<std::string, Entry<Abstract>> abstracts_;

  std::atomic<std::uint64_t> n_search_{0};
  std::atomic<std::uint64_t> n_timeline_{0};
  std::atomic<std::uint64_t> n_user_{0};
  std::atomic<std::uint64_t> n_repos_{0};
  std::atomic<std::uint64_t> n_abstract_{0};
};

}  // namespace expertquest::sources
