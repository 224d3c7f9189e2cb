#include "expertquest/json_io.hpp"

#include <cmath>

namespace expertquest::sources {
namespace {

std::uint64_t non_negative(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw std::invalid_argument(std::string(key) + " must be a non-negative integer");
}

}  // namespace

void to_json(nlohmann::json& j, const Post& p) {
  j = nlohmann::json{{"author_handle", p.author_handle},
                     {"author_display_name", p.author_display_name},
                     {"author_follower_count", p.author_follower_count},
                     {"text", p.text}};
}

void from_json(const nlohmann::json& j, Post& p) {
  p.author_handle = j.at("author_handle").get<std::string>();
  if (p.author_handle.empty()) {
    throw std::invalid_argument("author_handle must not be empty");
  }
  p.author_display_name = j.value("author_display_name", std::string());
  p.author_follower_count =
      j.contains("author_follower_count") ? non_negative(j, "author_follower_count") : 0;
  p.text = j.value("text", std::string());
}

void to_json(nlohmann::json& j, const CodeHostUser& u) {
  j = nlohmann::json{{"handle", u.handle},
                     {"follower_count", u.follower_count},
                     {"profile_url", u.profile_url}};
}

void from_json(const nlohmann::json& j, CodeHostUser& u) {
  u.handle = j.at("handle").get<std::string>();
  if (u.handle.empty()) throw std::invalid_argument("handle must not be empty");
  u.follower_count = j.contains("follower_count") ? non_negative(j, "follower_count") : 0;
  u.profile_url = j.value("profile_url", std::string());
}

void to_json(nlohmann::json& j, const Abstract& a) {
  j = nlohmann::json{{"resource_id", a.resource_id}, {"text", a.text}};
}

void from_json(const nlohmann::json& j, Abstract& a) {
  a.resource_id = j.at("resource_id").get<std::string>();
  a.text = j.value("text", std::string());
}

}  // namespace expertquest::sources

namespace expertquest::search {

void to_json(nlohmann::json& j, const CandidateProfile& c) {
  j = nlohmann::json{{"handle", c.handle},
                     {"display_name", c.display_name},
                     {"bytes_of_code", c.bytes_of_code},
                     {"github_followers", c.github_followers},
                     {"cosine", c.cosine},
                     {"twitter_followers", c.twitter_followers},
                     {"microblog_profile_url", c.microblog_profile_url},
                     {"codehost_profile_url", c.codehost_profile_url}};
}

void from_json(const nlohmann::json& j, CandidateProfile& c) {
  c.handle = j.at("handle").get<std::string>();
  c.display_name = j.value("display_name", std::string());
  c.bytes_of_code = j.at("bytes_of_code").get<std::uint64_t>();
  c.github_followers = j.at("github_followers").get<std::uint64_t>();
  c.cosine = j.at("cosine").get<double>();
  c.twitter_followers = j.at("twitter_followers").get<std::uint64_t>();
  c.microblog_profile_url = j.value("microblog_profile_url", std::string());
  c.codehost_profile_url = j.value("codehost_profile_url", std::string());
}

int mentions_percent(double cosine) noexcept {
  if (!(cosine > 0.0)) return 0;
  if (cosine >= 1.0) return 100;
  return static_cast<int>(std::lround(cosine * 100.0));
}

nlohmann::json results_json(const std::vector<CandidateProfile>& ranked) {
  auto out = nlohmann::json::array();
  std::size_t position = 0;
  for (const auto& c : ranked) {
    nlohmann::json row = c;
    row["rank"] = ++position;
    row["mentions_percent"] = mentions_percent(c.cosine);
    out.push_back(std::move(row));
  }
  return out;
}

nlohmann::json search_response_json(std::string_view language,
                                    std::uint64_t elapsed_ms,
                                    const std::vector<CandidateProfile>& ranked) {
  return nlohmann::json{{"language", language},
                        {"elapsed_ms", elapsed_ms},
                        {"results", results_json(ranked)}};
}

}  // namespace expertquest::search
