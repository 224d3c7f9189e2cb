#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <pthread.h>
#include <sstream>

#include "expertquest/eval.hpp"
#include "expertquest/fixture_corpus.hpp"
#include "expertquest/json_io.hpp"
#include "expertquest/live_sources.hpp"
#include "expertquest/search.hpp"
#include "expertquest/service.hpp"
#include "expertquest/textpipe.hpp"

namespace expertquest::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string backend = "fixture";
  std::string fixtures;
  std::string credentials;
  std::string languages;
  std::size_t vector_size = textpipe::kDefaultVectorSize;
  std::size_t parallelism = 4;
  std::size_t search_count = search::kDefaultSearchCount;
  std::size_t timeline_count = search::kDefaultTimelineCount;
  std::string format = "table";
  std::string out;
  std::string bind = "127.0.0.1:8080";
  int timeout_seconds = 30;
  std::string cors_origin = "*";
};

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

search::LanguageList load_languages(const CliConfig& cfg) {
  if (cfg.languages.empty()) return search::LanguageList::builtin();
  try {
    return search::LanguageList::load(cfg.languages);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

sources::SourceSet make_sources(const CliConfig& cfg) {
  if (cfg.backend == "fixture") {
    if (cfg.fixtures.empty()) throw UsageError("--fixtures is required with --backend fixture");
    try {
      return sources::FixtureCorpus::as_sources(sources::FixtureCorpus::load(cfg.fixtures));
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
  }
  if (cfg.credentials.empty()) {
    throw UsageError("--credentials is required with --backend live");
  }
  sources::Credentials creds;
  try {
    creds = sources::Credentials::load(cfg.credentials);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  sources::LiveOptions options;
  options.timeout = std::chrono::seconds(cfg.timeout_seconds);
  return sources::make_live_sources(creds, options);
}

std::shared_ptr<search::ExpertFinder> make_finder(const CliConfig& cfg) {
  return std::make_shared<search::ExpertFinder>(
      make_sources(cfg), load_languages(cfg),
      search::FinderOptions{std::max<std::size_t>(cfg.parallelism, 1)});
}

void check_counts(const CliConfig& cfg) {
  if (cfg.search_count == 0 || cfg.timeline_count == 0 || cfg.vector_size == 0) {
    throw UsageError("counts and vector size must be >= 1");
  }
}

std::string with_commas(std::uint64_t n) {
  std::string digits = std::to_string(n);
  for (int i = static_cast<int>(digits.size()) - 3; i > 0; i -= 3) {
    digits.insert(static_cast<std::size_t>(i), ",");
  }
  return digits;
}

// Columns follow the results page: rank, name, handle, bytes of code,
// code-host followers, mentions %, microblog followers, links.
void print_table(std::ostream& out, const std::vector<search::CandidateProfile>& ranked) {
  out << std::left << std::setw(5) << "rank" << std::setw(24) << "name" << std::setw(20)
      << "handle" << std::right << std::setw(14) << "bytes" << std::setw(10) << "gh_foll"
      << std::setw(10) << "mentions" << std::setw(10) << "tw_foll" << "  links\n";
  std::size_t position = 0;
  for (const auto& c : ranked) {
    out << std::left << std::setw(5) << ++position << std::setw(24) << c.display_name
        << std::setw(20) << c.handle << std::right << std::setw(14)
        << with_commas(c.bytes_of_code) << std::setw(10) << c.github_followers
        << std::setw(9) << search::mentions_percent(c.cosine) << '%' << std::setw(10)
        << c.twitter_followers << "  " << c.microblog_profile_url << ' '
        << c.codehost_profile_url << '\n';
  }
  if (ranked.empty()) out << "no experts found\n";
}

int cmd_search(const CliConfig& cfg, const std::string& language, std::ostream& out) {
  check_counts(cfg);
  auto finder = make_finder(cfg);
  if (finder->languages().find(language) == nullptr) {
    throw UsageError("unknown language '" + language + "'");
  }
  const auto params =
      finder->params_for(language, cfg.search_count, cfg.timeline_count, cfg.vector_size);
  const auto started = Clock::now();
  const auto ranked = finder->find_experts(params);
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started);
  if (cfg.format == "json") {
    out << search::search_response_json(language,
                                        static_cast<std::uint64_t>(elapsed.count()), ranked)
               .dump(2)
        << '\n';
  } else {
    print_table(out, ranked);
  }
  return kOk;
}

int cmd_dump(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  check_counts(cfg);
  if (cfg.out.empty()) throw UsageError("--out is required for dump");
  auto finder = make_finder(cfg);
  fs::create_directories(cfg.out);
  for (const auto& language : finder->languages().entries()) {
    search::SearchParams params{language, cfg.search_count, cfg.timeline_count,
                                cfg.vector_size};
    std::vector<search::CandidateProfile> ranked;
    try {
      ranked = finder->find_experts(params);
    } catch (const search::SearchFailed& e) {
      err << "warning: " << language.display_name << ": " << e.what() << '\n';
    }
    const fs::path path =
        fs::path(cfg.out) / (sources::percent_encode(language.display_name) + ".json");
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    file << search::results_json(ranked).dump(2) << '\n';
    out << path.string() << ' ' << ranked.size() << '\n';
  }
  return kOk;
}

void print_summary(std::ostream& out, const eval::RunSummary& s) {
  out << std::fixed << std::setprecision(9) << "run search_count=" << s.config.search_count
      << " timeline_count=" << s.config.timeline_count
      << " avg_precision=" << s.average_precision << " avg_recall=" << s.average_recall
      << " avg_cosine=" << s.average_cosine << '\n';
  out.unsetf(std::ios::floatfield);
}

int cmd_eval(const CliConfig& cfg, const std::string& runs, const std::string& replay,
             std::ostream& out) {
  std::vector<eval::RunSummary> summaries;
  if (!replay.empty()) {
    if (cfg.search_count == 0) throw UsageError("--search-count must be >= 1");
    std::ifstream in(replay, std::ios::binary);
    if (!in) throw UsageError("cannot read " + replay);
    std::vector<eval::EvalRow> rows;
    try {
      rows = eval::complete_rows(load_languages(cfg),
                                 eval::read_rows_csv(in, cfg.search_count),
                                 cfg.search_count);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    summaries.push_back(eval::summarize_run({cfg.search_count, cfg.timeline_count},
                                            std::move(rows), {}));
  } else {
    std::vector<eval::RunConfig> configs;
    try {
      configs = eval::parse_run_configs(runs);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    auto finder = make_finder(cfg);
    summaries = eval::run_sweep(*finder, configs, cfg.vector_size);
  }
  for (const auto& s : summaries) {
    print_summary(out, s);
    if (!cfg.out.empty()) {
      const auto [csv, js] = eval::write_report(cfg.out, s);
      out << "wrote " << csv.string() << ' ' << js.string() << '\n';
    }
  }
  return kOk;
}

int cmd_vectorize(const CliConfig& cfg, const std::string& path, std::ostream& out) {
  if (cfg.vector_size == 0) throw UsageError("--vector-size must be >= 1");
  const std::string text = read_text_file(path);
  const auto started = Clock::now();
  const auto vector = textpipe::vectorize(text, cfg.vector_size);
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - started);
  const double ms = static_cast<double>(elapsed.count()) / 1000.0;
  if (cfg.format == "json") {
    nlohmann::ordered_json doc{{"size", vector.size()},
                               {"tokens", vector.total()},
                               {"elapsed_ms", ms},
                               {"counts", std::vector<std::uint32_t>(vector.counts().begin(),
                                                                     vector.counts().end())}};
    out << doc.dump() << '\n';
  } else {
    bool first = true;
    for (auto c : vector.counts()) {
      out << (first ? "" : " ") << c;
      first = false;
    }
    out << "\ntokens: " << vector.total() << "\nelapsed_ms: " << std::fixed
        << std::setprecision(3) << ms << '\n';
    out.unsetf(std::ios::floatfield);
  }
  return kOk;
}

int cmd_cosine(const CliConfig& cfg, const std::string& a, const std::string& b,
               std::ostream& out) {
  if (cfg.vector_size == 0) throw UsageError("--vector-size must be >= 1");
  const auto va = textpipe::vectorize(read_text_file(a), cfg.vector_size);
  const auto vb = textpipe::vectorize(read_text_file(b), cfg.vector_size);
  const double sim = textpipe::cosine_similarity(va, vb).value();
  if (cfg.format == "json") {
    out << nlohmann::json{{"cosine", sim}}.dump() << '\n';
  } else {
    out << std::fixed << std::setprecision(6) << sim << '\n';
    out.unsetf(std::ios::floatfield);
  }
  return kOk;
}

std::pair<std::string, int> parse_bind(const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw UsageError("--bind must be HOST:PORT");
  const std::string host = bind.substr(0, colon);
  int port = -1;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
  }
  if (host.empty() || port < 0 || port > 65535) throw UsageError("--bind must be HOST:PORT");
  return {host, port};
}

int cmd_serve(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  check_counts(cfg);
  const auto [host, port] = parse_bind(cfg.bind);
  auto finder = make_finder(cfg);
  service::ServiceOptions options;
  options.cors_origin = cfg.cors_origin;
  options.vector_size = cfg.vector_size;
  auto svc = std::make_shared<service::SearchService>(finder, options);
  service::HttpServer server(svc);
  int bound = 0;
  try {
    bound = server.bind(host, port);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }

  // Block termination signals before the server thread starts so only
  // sigwait below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  server.start();
  out << "listening on " << host << ':' << bound << " (backend "
      << sources::to_string(finder->sources().kind) << ")" << std::endl;
  int received = 0;
  sigwait(&signals, &received);
  server.stop();
  out << "shutting down" << std::endl;
  return kOk;
}

// Global options that may also come from the environment.
constexpr std::pair<const char*, const char*> kEnvOptions[] = {
    {"--backend", "EXPERTQUEST_BACKEND"},
    {"--fixtures", "EXPERTQUEST_FIXTURES"},
    {"--credentials", "EXPERTQUEST_CREDENTIALS"},
    {"--languages", "EXPERTQUEST_LANGUAGES"},
    {"--vector-size", "EXPERTQUEST_VECTOR_SIZE"},
    {"--parallelism", "EXPERTQUEST_PARALLELISM"},
    {"--search-count", "EXPERTQUEST_SEARCH_COUNT"},
    {"--timeline-count", "EXPERTQUEST_TIMELINE_COUNT"},
    {"--format", "EXPERTQUEST_FORMAT"},
    {"--out", "EXPERTQUEST_OUT"},
    {"--bind", "EXPERTQUEST_BIND"},
    {"--timeout", "EXPERTQUEST_TIMEOUT"},
    {"--cors-origin", "EXPERTQUEST_CORS_ORIGIN"},
};

// Environment values go in front of the real arguments; with TakeLast the
// command line wins, and the config file only fills what is still unset.
std::vector<std::string> with_environment(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.emplace_back(argc > 0 ? argv[0] : "expertquest");
  for (const auto& [flag, name] : kEnvOptions) {
    if (const char* value = std::getenv(name); value != nullptr && *value != '\0') {
      args.push_back(std::string(flag) + "=" + value);
    }
  }
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return args;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Find programming-language experts from microblog, code-host and "
               "encyclopedia data",
               "expertquest"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.footer("Global options can also be set with EXPERTQUEST_<OPTION>, e.g. "
             "EXPERTQUEST_FIXTURES. Precedence: flags, then environment, then --config.");

  CliConfig cfg;
  app.add_option("--backend", cfg.backend, "Data backend")
      ->check(CLI::IsMember({"live", "fixture"}))
      ->capture_default_str();
  app.add_option("--fixtures", cfg.fixtures, "Fixture corpus directory");
  app.add_option("--credentials", cfg.credentials, "Credentials JSON file");
  app.add_option("--languages", cfg.languages, "Language list JSON file");
  app.add_option("--vector-size", cfg.vector_size, "Feature vector buckets")
      ->capture_default_str();
  app.add_option("--parallelism", cfg.parallelism, "Candidates scored concurrently")
      ->capture_default_str();
  app.add_option("--search-count", cfg.search_count, "Microblog search results to load")
      ->capture_default_str();
  app.add_option("--timeline-count", cfg.timeline_count, "Timeline posts per candidate")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--bind", cfg.bind, "HOST:PORT for serve")
      ->capture_default_str();
  app.add_option("--timeout", cfg.timeout_seconds, "Per-request timeout (seconds)")
      ->capture_default_str();
  app.add_option("--cors-origin", cfg.cors_origin, "Access-Control-Allow-Origin value")
      ->capture_default_str();
  bool json_flag = false;
  app.add_flag("--json", json_flag, "Shorthand for --format json");

  std::string language;
  auto* search_cmd = app.add_subcommand("search", "Rank experts for one language");
  search_cmd->add_option("language", language, "Display name, e.g. Clojure")->required();

  app.add_subcommand("dump", "Write scored candidates for every language to --out");

  std::string runs = "10:5,30:15,50:25";
  std::string replay;
  auto* eval_cmd = app.add_subcommand("eval", "Precision/recall sweep or replay of recorded rows");
  eval_cmd->add_option("--runs", runs, "SEARCH:TIMELINE,... configurations")
      ->capture_default_str();
  eval_cmd->add_option("--replay", replay,
                       "CSV of language,candidates,experts rows to summarize");

  std::string file_a, file_b;
  auto* vec_cmd = app.add_subcommand("vectorize", "Print the feature vector of a text file");
  vec_cmd->add_option("file", file_a, "Text file")->required();

  auto* cos_cmd = app.add_subcommand("cosine", "Cosine similarity of two text files");
  cos_cmd->add_option("file_a", file_a, "First text file")->required();
  cos_cmd->add_option("file_b", file_b, "Second text file")->required();

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");

  const auto args = with_environment(argc, argv);
  std::vector<const char*> full_argv;
  for (const auto& a : args) full_argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(full_argv.size()), full_argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  if (json_flag) cfg.format = "json";

  try {
    if (search_cmd->parsed()) return cmd_search(cfg, language, out);
    if (app.got_subcommand("dump")) return cmd_dump(cfg, out, err);
    if (eval_cmd->parsed()) return cmd_eval(cfg, runs, replay, out);
    if (vec_cmd->parsed()) return cmd_vectorize(cfg, file_a, out);
    if (cos_cmd->parsed()) return cmd_cosine(cfg, file_a, file_b, out);
    if (serve_cmd->parsed()) return cmd_serve(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace expertquest::cli
