#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "expertquest/search.hpp"

namespace expertquest::eval {

struct RunConfig {
  std::size_t search_count = search::kDefaultSearchCount;
  std::size_t timeline_count = search::kDefaultTimelineCount;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// The three test-run settings (search count, timeline count).
inline constexpr RunConfig kStandardRuns[] = {{10, 5}, {30, 15}, {50, 25}};

struct EvalRow {
  std::string language;
  std::uint64_t candidates_found = 0;
  std::uint64_t experts_found = 0;
  double precision = 0.0;  // experts / candidates, 0 when no candidates
  double recall = 0.0;     // experts / search_count
};

struct RunSummary {
  RunConfig config;
  std::vector<EvalRow> rows;
  double average_precision = 0.0;
  double average_recall = 0.0;
  double average_cosine = 0.0;
};

/// A candidate counts as an expert when they hold any code in the language.
bool is_expert(const search::CandidateProfile& candidate) noexcept;

/// Row from raw counts. Throws std::invalid_argument when
/// experts > candidates or search_count == 0.
EvalRow make_row(std::string language, std::uint64_t candidates,
                 std::uint64_t experts, std::size_t search_count);

EvalRow evaluate_language(std::string language,
                          std::span<const search::CandidateProfile> candidates,
                          std::size_t search_count);

/// Means over all rows (zero rows included) and over all candidate cosines.
RunSummary summarize_run(RunConfig config, std::vector<EvalRow> rows,
                         std::span<const double> cosines);

/// Appends zero rows for every configured language missing from `rows`,
/// then orders rows by the configured list. Rows naming unknown languages
/// throw std::invalid_argument.
std::vector<EvalRow> complete_rows(const search::LanguageList& languages,
                                   std::vector<EvalRow> rows,
                                   std::size_t search_count);

/// Called once per (run, language) with the ranked candidates.
using SweepObserver =
    std::function<void(const RunConfig&, const search::LanguageEntry&,
                       const std::vector<search::CandidateProfile>&)>;

/// Runs find_experts for every configured language under every config.
/// A failed language search contributes a zero row and a warning.
std::vector<RunSummary> run_sweep(const search::ExpertFinder& finder,
                                  std::span<const RunConfig> configs,
                                  std::size_t vector_size = textpipe::kDefaultVectorSize,
                                  const SweepObserver& observer = {});

/// language,candidates,experts,precision,recall (full precision) plus
/// precision_3dp,recall_3dp display columns.
void write_csv(std::ostream& out, const RunSummary& summary);

/// {search_count, timeline_count, avg_precision, avg_recall, avg_cosine}
std::string summary_json(const RunSummary& summary);

/// Writes run_<search>_<timeline>.csv and .json into `dir`; returns the
/// two paths.
std::pair<std::filesystem::path, std::filesystem::path> write_report(
    const std::filesystem::path& dir, const RunSummary& summary);

/// Reads "language,candidates,experts" rows (header optional; extra
/// columns ignored).
std::vector<EvalRow> read_rows_csv(std::istream& in, std::size_t search_count);

/// "10:5,30:15" -> configs. Throws std::invalid_argument.
std::vector<RunConfig> parse_run_configs(std::string_view text);

}  // namespace expertquest::eval
