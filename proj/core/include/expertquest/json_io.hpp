#pragma once

#include <nlohmann/json.hpp>

#include "expertquest/eval.hpp"
#include "expertquest/search.hpp"
#include "expertquest/sources.hpp"

namespace expertquest::sources {

void to_json(nlohmann::json& j, const Post& p);
void from_json(const nlohmann::json& j, Post& p);
void to_json(nlohmann::json& j, const CodeHostUser& u);
void from_json(const nlohmann::json& j, CodeHostUser& u);
void to_json(nlohmann::json& j, const Abstract& a);
void from_json(const nlohmann::json& j, Abstract& a);

}  // namespace expertquest::sources

namespace expertquest::search {

void to_json(nlohmann::json& j, const CandidateProfile& c);
void from_json(const nlohmann::json& j, CandidateProfile& c);

/// round(cosine * 100), in [0, 100].
int mentions_percent(double cosine) noexcept;

/// Ranked results as the API presents them: each candidate plus its
/// 1-based rank and mentions_percent.
nlohmann::json results_json(const std::vector<CandidateProfile>& ranked);

/// {"language", "elapsed_ms", "results"}.
nlohmann::json search_response_json(std::string_view language,
                                    std::uint64_t elapsed_ms,
                                    const std::vector<CandidateProfile>& ranked);

}  // namespace expertquest::search
