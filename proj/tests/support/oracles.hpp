#pragma once

// Independent reference computations used to cross-check the library.
// None of these call into expertquest_core except for plain data types.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <tuple>
#include <vector>

#include "expertquest/search.hpp"

namespace expertquest::testing {

/// Cosine over explicit word -> count maps.
inline double bag_of_words_cosine(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b) {
  std::map<std::string, long double> ca;
  std::map<std::string, long double> cb;
  for (const auto& w : a) ca[w] += 1;
  for (const auto& w : b) cb[w] += 1;
  long double dot = 0;
  long double na = 0;
  long double nb = 0;
  for (const auto& [w, c] : ca) {
    na += c * c;
    auto it = cb.find(w);
    if (it != cb.end()) dot += c * it->second;
  }
  for (const auto& [w, c] : cb) nb += c * c;
  if (na == 0 || nb == 0) return 0.0;
  return static_cast<double>(dot / (std::sqrt(na) * std::sqrt(nb)));
}

/// Selection sort on the explicit key tuple. O(n^2), no std::sort.
inline std::vector<search::CandidateProfile> brute_force_rank(
    std::vector<search::CandidateProfile> in) {
  auto key = [](const search::CandidateProfile& c) {
    return std::make_tuple(c.bytes_of_code, c.github_followers, c.cosine,
                           c.twitter_followers);
  };
  std::vector<search::CandidateProfile> out;
  while (!in.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < in.size(); ++i) {
      const auto ki = key(in[i]);
      const auto kb = key(in[best]);
      if (ki > kb || (ki == kb && in[i].handle < in[best].handle)) best = i;
    }
    out.push_back(in[best]);
    in.erase(in.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

/// Sums bytes for `language` straight from a corpus repos file.
inline std::uint64_t sum_repo_bytes(const std::filesystem::path& corpus,
                                    const std::string& handle_lower,
                                    const std::string& language) {
  std::ifstream in(corpus / "repos" / (handle_lower + ".json"));
  if (!in) return 0;
  const auto doc = nlohmann::json::parse(in);
  std::uint64_t total = 0;
  for (const auto& repo : doc) {
    for (const auto& [lang, bytes] : repo.items()) {
      if (lang.size() != language.size()) continue;
      bool same = true;
      for (std::size_t i = 0; i < lang.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(lang[i])) !=
            std::tolower(static_cast<unsigned char>(language[i]))) {
          same = false;
        }
      }
      if (same) total += bytes.get<std::uint64_t>();
    }
  }
  return total;
}

}  // namespace expertquest::testing
