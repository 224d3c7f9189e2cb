#include "expertquest/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <tuple>

#include "logging.hpp"

namespace expertquest::search {

using sources::ErrorKind;
using sources::SourceError;

void SearchParams::validate() const {
  if (search_count == 0) throw std::invalid_argument("search_count must be >= 1");
  if (timeline_count == 0) throw std::invalid_argument("timeline_count must be >= 1");
  if (vector_size == 0) throw std::invalid_argument("vector_size must be >= 1");
}

CandidateError::CandidateError(std::string handle, const SourceError& cause)
    : std::runtime_error("candidate " + handle + ": " + cause.what()),
      handle_(std::move(handle)),
      kind_(cause.kind()) {}

SearchFailed::SearchFailed(const std::string& stage, const SourceError& cause)
    : std::runtime_error("search failed during " + stage + ": " + cause.what()),
      cause_(cause.kind()),
      retry_after_(cause.retry_after()) {}

std::string build_query(const LanguageEntry& language) {
  return language.display_name + " github";
}

std::string microblog_profile_url(std::string_view handle) {
  return "https://twitter.com/" + std::string(handle);
}

std::vector<MatchedHandle> match_handles(std::span<const sources::Post> posts,
                                         sources::CodeHostSource& codehost) {
  std::vector<MatchedHandle> matched;
  std::vector<std::string> seen;
  for (const auto& post : posts) {
    std::string key = sources::to_lower_ascii(post.author_handle);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));

    std::optional<sources::CodeHostUser> account;
    try {
      account = codehost.get_code_user(post.author_handle);
    } catch (const SourceError& e) {
      if (e.kind() != ErrorKind::UserNotFound) throw;
    }
    if (account) matched.push_back({post.author_handle, post, std::move(*account)});
  }
  return matched;
}

CandidateProfile score_candidate(const MatchedHandle& candidate,
                                 const SearchParams& params,
                                 const textpipe::FeatureVector& abstract_vector,
                                 const sources::SourceSet& sources) {
  try {
    const auto timeline =
        sources.microblog->get_timeline(candidate.handle, params.timeline_count);
    std::string joined;
    for (const auto& post : timeline) {
      if (!joined.empty()) joined.push_back(' ');
      joined += post.text;
    }
    const auto timeline_vector = textpipe::vectorize(joined, abstract_vector.size());
    const auto bytes = sources.codehost->get_repo_language_bytes(
        candidate.account.handle, params.language.display_name);

    CandidateProfile profile;
    profile.handle = candidate.account.handle;
    profile.display_name = candidate.origin.author_display_name;
    profile.twitter_followers = candidate.origin.author_follower_count;
    profile.github_followers = candidate.account.follower_count;
    profile.bytes_of_code = bytes;
    profile.cosine = textpipe::cosine_similarity(timeline_vector, abstract_vector).value();
    profile.microblog_profile_url = microblog_profile_url(candidate.handle);
    profile.codehost_profile_url = candidate.account.profile_url;
    return profile;
  } catch (const SourceError& e) {
    throw CandidateError(candidate.handle, e);
  }
}

CandidateProfile score_candidate(const MatchedHandle& candidate,
                                 const SearchParams& params,
                                 const sources::Abstract& abstract,
                                 const sources::SourceSet& sources) {
  return score_candidate(candidate, params,
                         textpipe::vectorize(abstract.text, params.vector_size),
                         sources);
}

bool ranks_before(const CandidateProfile& a, const CandidateProfile& b) noexcept {
  const auto key_a = std::tie(a.bytes_of_code, a.github_followers, a.cosine,
                              a.twitter_followers);
  const auto key_b = std::tie(b.bytes_of_code, b.github_followers, b.cosine,
                              b.twitter_followers);
  if (key_a != key_b) return key_a > key_b;
  return a.handle < b.handle;
}

std::vector<CandidateProfile> rank(std::vector<CandidateProfile> candidates) {
  std::stable_sort(candidates.begin(), candidates.end(), ranks_before);
  return candidates;
}

ExpertFinder::ExpertFinder(sources::SourceSet sources, LanguageList languages,
                           FinderOptions options)
    : sources_(std::move(sources)), languages_(std::move(languages)), options_(options) {
  if (!sources_.microblog || !sources_.codehost || !sources_.encyclopedia) {
    throw std::invalid_argument("ExpertFinder: all three sources are required");
  }
  if (options_.parallelism == 0) options_.parallelism = 1;
}

SearchParams ExpertFinder::params_for(std::string_view display_name,
                                      std::size_t search_count,
                                      std::size_t timeline_count,
                                      std::size_t vector_size) const {
  const LanguageEntry* entry = languages_.find(display_name);
  if (entry == nullptr) {
    throw std::invalid_argument("unknown language '" + std::string(display_name) + "'");
  }
  SearchParams params{*entry, search_count, timeline_count, vector_size};
  params.validate();
  return params;
}

std::vector<CandidateProfile> ExpertFinder::find_experts(const SearchParams& params) const {
  params.validate();
  const LanguageEntry* entry = languages_.find(params.language.display_name);
  if (entry == nullptr || *entry != params.language) {
    throw std::invalid_argument("unknown language '" + params.language.display_name + "'");
  }

  std::vector<sources::Post> posts;
  try {
    posts = sources_.microblog->search_posts(build_query(params.language),
                                             params.search_count);
  } catch (const SourceError& e) {
    throw SearchFailed("microblog search", e);
  }
  if (posts.size() > params.search_count) posts.resize(params.search_count);

  std::vector<MatchedHandle> matched;
  try {
    matched = match_handles(posts, *sources_.codehost);
  } catch (const SourceError& e) {
    throw SearchFailed("account matching", e);
  }
  if (matched.empty()) return {};

  sources::Abstract abstract;
  try {
    abstract = sources_.encyclopedia->get_abstract(params.language.resource_id);
  } catch (const SourceError& e) {
    throw SearchFailed("abstract fetch", e);
  }
  const auto abstract_vector = textpipe::vectorize(abstract.text, params.vector_size);

  // Each slot is written by exactly one worker; order is restored by rank().
  std::vector<std::optional<CandidateProfile>> slots(matched.size());
  std::atomic<std::size_t> next{0};
  std::mutex failure_mu;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < matched.size(); i = next++) {
      try {
        slots[i] = score_candidate(matched[i], params, abstract_vector, sources_);
      } catch (const CandidateError& e) {
        detail::logger()->warn("dropping {}", e.what());
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(options_.parallelism, matched.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<CandidateProfile> scored;
  scored.reserve(slots.size());
  for (auto& s : slots) {
    if (s) scored.push_back(std::move(*s));
  }
  return rank(std::move(scored));
}

}  // namespace expertquest::search
