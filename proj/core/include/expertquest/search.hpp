#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "expertquest/languages.hpp"
#include "expertquest/sources.hpp"
#include "expertquest/textpipe.hpp"

namespace expertquest::search {

inline constexpr std::size_t kDefaultSearchCount = 50;
inline constexpr std::size_t kDefaultTimelineCount = 25;

struct SearchParams {
  LanguageEntry language;
  std::size_t search_count = kDefaultSearchCount;
  std::size_t timeline_count = kDefaultTimelineCount;
  std::size_t vector_size = textpipe::kDefaultVectorSize;

  /// Throws std::invalid_argument when a count or the vector size is zero.
  void validate() const;
};

struct CandidateProfile {
  std::string handle;
  std::string display_name;
  std::uint64_t twitter_followers = 0;
  std::uint64_t github_followers = 0;
  std::uint64_t bytes_of_code = 0;
  double cosine = 0.0;
  std::string microblog_profile_url;
  std::string codehost_profile_url;

  friend bool operator==(const CandidateProfile&, const CandidateProfile&) = default;
};

/// A search-result author who also has a code-host account.
struct MatchedHandle {
  std::string handle;               // as written in the post
  sources::Post origin;             // first post seen from this author
  sources::CodeHostUser account;
};

/// Source failure while scoring one candidate.
class CandidateError : public std::runtime_error {
 public:
  CandidateError(std::string handle, const sources::SourceError& cause);

  const std::string& handle() const noexcept { return handle_; }
  sources::ErrorKind kind() const noexcept { return kind_; }

 private:
  std::string handle_;
  sources::ErrorKind kind_;
};

/// The microblog search or the abstract fetch failed, so there is nothing
/// to rank.
class SearchFailed : public std::runtime_error {
 public:
  SearchFailed(const std::string& stage, const sources::SourceError& cause);

  sources::ErrorKind cause() const noexcept { return cause_; }
  std::optional<std::chrono::seconds> retry_after() const noexcept {
    return retry_after_;
  }

 private:
  sources::ErrorKind cause_;
  std::optional<std::chrono::seconds> retry_after_;
};

/// "<display name> github".
std::string build_query(const LanguageEntry& language);

std::string microblog_profile_url(std::string_view handle);

/// Unique authors (case-insensitive, first-seen order) that have a
/// code-host account. UserNotFound is treated as "no account"; other
/// source errors propagate.
std::vector<MatchedHandle> match_handles(std::span<const sources::Post> posts,
                                         sources::CodeHostSource& codehost);

/// Scores one matched candidate against a pre-vectorized abstract.
/// Throws CandidateError on any source failure.
CandidateProfile score_candidate(const MatchedHandle& candidate,
                                 const SearchParams& params,
                                 const textpipe::FeatureVector& abstract_vector,
                                 const sources::SourceSet& sources);

/// Convenience overload that vectorizes the abstract itself.
CandidateProfile score_candidate(const MatchedHandle& candidate,
                                 const SearchParams& params,
                                 const sources::Abstract& abstract,
                                 const sources::SourceSet& sources);

/// Strict weak order: descending on (bytes_of_code, github_followers,
/// cosine, twitter_followers), then handle ascending.
bool ranks_before(const CandidateProfile& a, const CandidateProfile& b) noexcept;

std::vector<CandidateProfile> rank(std::vector<CandidateProfile> candidates);

struct FinderOptions {
  /// Upper bound on candidates scored concurrently; 1 means serial.
  std::size_t parallelism = 4;
};

/// End-to-end search: query, match, fetch abstract, score, rank.
class ExpertFinder {
 public:
  ExpertFinder(sources::SourceSet sources, LanguageList languages,
               FinderOptions options = {});

  /// Throws std::invalid_argument for unknown languages or bad params and
  /// SearchFailed when the microblog search or abstract fetch fails.
  /// Candidates whose scoring fails are dropped with a warning.
  std::vector<CandidateProfile> find_experts(const SearchParams& params) const;

  /// Builds SearchParams for a configured display name.
  SearchParams params_for(std::string_view display_name,
                          std::size_t search_count = kDefaultSearchCount,
                          std::size_t timeline_count = kDefaultTimelineCount,
                          std::size_t vector_size = textpipe::kDefaultVectorSize) const;

  const LanguageList& languages() const noexcept { return languages_; }
  const sources::SourceSet& sources() const noexcept { return sources_; }
  const FinderOptions& options() const noexcept { return options_; }

 private:
  sources::SourceSet sources_;
  LanguageList languages_;
  FinderOptions options_;
};

}  // namespace expertquest::search
