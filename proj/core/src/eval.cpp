#include "expertquest/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "logging.hpp"

namespace expertquest::eval {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Splits one CSV line; supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(trim(field));
  return fields;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::optional<std::uint64_t> parse_count(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string fixed(double v, int decimals) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << v;
  return os.str();
}

// Enough digits to parse back to the same double.
std::string exact(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

}  // namespace

bool is_expert(const search::CandidateProfile& candidate) noexcept {
  return candidate.bytes_of_code > 0;
}

EvalRow make_row(std::string language, std::uint64_t candidates,
                 std::uint64_t experts, std::size_t search_count) {
  if (search_count == 0) throw std::invalid_argument("search_count must be >= 1");
  if (experts > candidates) {
    throw std::invalid_argument(language + ": experts exceed candidates");
  }
  EvalRow row;
  row.language = std::move(language);
  row.candidates_found = candidates;
  row.experts_found = experts;
  row.precision = candidates > 0 ? static_cast<double>(experts) /
                                       static_cast<double>(candidates)
                                 : 0.0;
  row.recall = static_cast<double>(experts) / static_cast<double>(search_count);
  return row;
}

EvalRow evaluate_language(std::string language,
                          std::span<const search::CandidateProfile> candidates,
                          std::size_t search_count) {
  const auto experts = static_cast<std::uint64_t>(
      std::count_if(candidates.begin(), candidates.end(),
                    [](const auto& c) { return is_expert(c); }));
  return make_row(std::move(language), candidates.size(), experts, search_count);
}

RunSummary summarize_run(RunConfig config, std::vector<EvalRow> rows,
                         std::span<const double> cosines) {
  RunSummary summary;
  summary.config = config;
  summary.rows = std::move(rows);
  if (!summary.rows.empty()) {
    double p = 0.0, r = 0.0;
    for (const auto& row : summary.rows) {
      p += row.precision;
      r += row.recall;
    }
    const auto n = static_cast<double>(summary.rows.size());
    summary.average_precision = p / n;
    summary.average_recall = r / n;
  }
  if (!cosines.empty()) {
    double c = 0.0;
    for (double v : cosines) c += v;
    summary.average_cosine = c / static_cast<double>(cosines.size());
  }
  return summary;
}

std::vector<EvalRow> complete_rows(const search::LanguageList& languages,
                                   std::vector<EvalRow> rows,
                                   std::size_t search_count) {
  std::unordered_map<std::string, EvalRow> by_language;
  for (auto& row : rows) {
    if (languages.find(row.language) == nullptr) {
      throw std::invalid_argument("row for unconfigured language " + row.language);
    }
    const std::string key = row.language;
    if (!by_language.emplace(key, std::move(row)).second) {
      throw std::invalid_argument("duplicate row for " + key);
    }
  }
  std::vector<EvalRow> out;
  out.reserve(languages.size());
  for (const auto& entry : languages.entries()) {
    if (auto it = by_language.find(entry.display_name); it != by_language.end()) {
      out.push_back(std::move(it->second));
    } else {
      out.push_back(make_row(entry.display_name, 0, 0, search_count));
    }
  }
  return out;
}

std::vector<RunSummary> run_sweep(const search::ExpertFinder& finder,
                                  std::span<const RunConfig> configs,
                                  std::size_t vector_size,
                                  const SweepObserver& observer) {
  std::vector<RunSummary> summaries;
  for (const auto& config : configs) {
    std::vector<EvalRow> rows;
    std::vector<double> cosines;
    for (const auto& language : finder.languages().entries()) {
      search::SearchParams params{language, config.search_count,
                                  config.timeline_count, vector_size};
      std::vector<search::CandidateProfile> ranked;
      try {
        ranked = finder.find_experts(params);
      } catch (const search::SearchFailed& e) {
        detail::logger()->warn("{} ({}:{}): {}", language.display_name,
                               config.search_count, config.timeline_count, e.what());
      }
      if (observer) observer(config, language, ranked);
      for (const auto& c : ranked) cosines.push_back(c.cosine);
      rows.push_back(evaluate_language(language.display_name, ranked, config.search_count));
    }
    summaries.push_back(summarize_run(config, std::move(rows), cosines));
  }
  return summaries;
}

void write_csv(std::ostream& out, const RunSummary& summary) {
  out << "language,candidates,experts,precision,recall,precision_3dp,recall_3dp\n";
  for (const auto& row : summary.rows) {
    out << csv_field(row.language) << ',' << row.candidates_found << ','
        << row.experts_found << ',' << exact(row.precision) << ','
        << exact(row.recall) << ',' << fixed(row.precision, 3) << ','
        << fixed(row.recall, 3) << '\n';
  }
}

std::string summary_json(const RunSummary& summary) {
  nlohmann::ordered_json doc{{"search_count", summary.config.search_count},
                             {"timeline_count", summary.config.timeline_count},
                             {"avg_precision", summary.average_precision},
                             {"avg_recall", summary.average_recall},
                             {"avg_cosine", summary.average_cosine}};
  return doc.dump(2);
}

std::pair<std::filesystem::path, std::filesystem::path> write_report(
    const std::filesystem::path& dir, const RunSummary& summary) {
  std::filesystem::create_directories(dir);
  const std::string stem = "run_" + std::to_string(summary.config.search_count) + "_" +
                           std::to_string(summary.config.timeline_count);
  const auto csv_path = dir / (stem + ".csv");
  const auto json_path = dir / (stem + ".json");
  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
    write_csv(csv, summary);
  }
  {
    std::ofstream js(json_path, std::ios::binary);
    if (!js) throw std::runtime_error("cannot write " + json_path.string());
    js << summary_json(summary) << '\n';
  }
  return {csv_path, json_path};
}

std::vector<EvalRow> read_rows_csv(std::istream& in, std::size_t search_count) {
  std::vector<EvalRow> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_checked = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto fields = split_csv(line);
    if (fields.size() < 3) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected language,candidates,experts");
    }
    const auto candidates = parse_count(fields[1]);
    const auto experts = parse_count(fields[2]);
    const bool first = !header_checked;
    header_checked = true;
    if (!candidates || !experts) {
      if (first) continue;  // header
      throw std::invalid_argument("line " + std::to_string(line_no) + ": bad counts");
    }
    rows.push_back(make_row(fields[0], *candidates, *experts, search_count));
  }
  return rows;
}

std::vector<RunConfig> parse_run_configs(std::string_view text) {
  std::vector<RunConfig> configs;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string item = trim(text.substr(start, end - start));
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("run config '" + item + "' is not SEARCH:TIMELINE");
    }
    const auto s = parse_count(item.substr(0, colon));
    const auto t = parse_count(item.substr(colon + 1));
    if (!s || !t || *s == 0 || *t == 0) {
      throw std::invalid_argument("run config '" + item + "' needs positive counts");
    }
    configs.push_back({static_cast<std::size_t>(*s), static_cast<std::size_t>(*t)});
    start = end + 1;
  }
  return configs;
}

}  // namespace expertquest::eval
