#include "expertquest/fixture_corpus.hpp"

#include <fstream>
#include <sstream>

#include "expertquest/json_io.hpp"

namespace expertquest::sources {
namespace {

namespace fs = std::filesystem;

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SourceError(ErrorKind::MalformedDocument,
                      "cannot read fixture " + path.string());
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SourceError(ErrorKind::MalformedDocument,
                      path.string() + ": " + e.what());
  }
}

// Loads every *.json in root/sub, keyed by the decoded file stem passed
// through `key_of`.
template <typename T, typename Convert, typename KeyOf>
void load_dir(const fs::path& root, const char* sub,
              std::map<std::string, T>& into, Convert convert, KeyOf key_of) {
  const fs::path dir = root / sub;
  if (!fs::is_directory(dir)) return;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") {
      continue;
    }
    const nlohmann::json doc = read_json(entry.path());
    try {
      into.insert_or_assign(key_of(entry.path().stem().string()), convert(doc));
    } catch (const SourceError&) {
      throw;
    } catch (const std::exception& e) {
      throw SourceError(ErrorKind::MalformedDocument,
                        entry.path().string() + ": " + e.what());
    }
  }
}

[[noreturn]] void replay(ErrorKind kind,
                         std::optional<std::chrono::seconds> retry_after,
                         const std::string& what) {
  throw SourceError(kind, "recorded failure for " + what, retry_after);
}

}  // namespace

std::shared_ptr<FixtureCorpus> FixtureCorpus::load(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw std::runtime_error("fixture corpus not found: " + root.string());
  }
  std::shared_ptr<FixtureCorpus> corpus(new FixtureCorpus());

  // Wraps a converter so that {"error": ...} documents become RecordedError.
  auto entry_of = [](auto convert) {
    return [convert](const nlohmann::json& doc) {
      using Value = decltype(convert(doc));
      if (doc.is_object() && doc.contains("error")) {
        const auto name = doc.at("error").get<std::string>();
        const auto kind = parse_error_kind(name);
        if (!kind) throw std::invalid_argument("unknown error kind " + name);
        std::optional<std::chrono::seconds> retry;
        if (doc.contains("retry_after_seconds")) {
          retry = std::chrono::seconds(doc.at("retry_after_seconds").get<std::int64_t>());
        }
        return Entry<Value>(RecordedError{*kind, retry});
      }
      return Entry<Value>(convert(doc));
    };
  };
  auto posts = [](const nlohmann::json& d) { return d.get<std::vector<Post>>(); };
  auto user = [](const nlohmann::json& d) { return d.get<CodeHostUser>(); };
  auto repos = [](const nlohmann::json& d) {
    auto stats = d.get<std::vector<RepoLanguageStats>>();
    return stats;
  };
  auto abstract = [](const nlohmann::json& d) { return d.get<Abstract>(); };
  auto decoded = [](const std::string& stem) { return percent_decode(stem); };
  auto lowered = [](const std::string& stem) { return to_lower_ascii(stem); };

  load_dir(root, "searches", corpus->searches_, entry_of(posts), decoded);
  load_dir(root, "timelines", corpus->timelines_, entry_of(posts), lowered);
  load_dir(root, "users", corpus->users_, entry_of(user), lowered);
  load_dir(root, "repos", corpus->repos_, entry_of(repos), lowered);
  load_dir(root, "abstracts", corpus->abstracts_, entry_of(abstract), decoded);
  return corpus;
}

std::vector<Post> FixtureCorpus::search_posts(std::string_view query,
                                              std::size_t count) {
  ++n_search_;
  const auto it = searches_.find(std::string(query));
  if (it == searches_.end()) return {};
  if (const auto* err = std::get_if<RecordedError>(&it->second)) {
    replay(err->kind, err->retry_after, "search '" + std::string(query) + "'");
  }
  const auto& all = std::get<std::vector<Post>>(it->second);
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(std::min(count, all.size()))};
}

std::vector<Post> FixtureCorpus::get_timeline(std::string_view handle,
                                              std::size_t count) {
  ++n_timeline_;
  const auto it = timelines_.find(to_lower_ascii(handle));
  if (it == timelines_.end()) {
    throw SourceError(ErrorKind::UserNotFound,
                      "no timeline for " + std::string(handle));
  }
  if (const auto* err = std::get_if<RecordedError>(&it->second)) {
    replay(err->kind, err->retry_after, "timeline " + std::string(handle));
  }
  const auto& all = std::get<std::vector<Post>>(it->second);
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(std::min(count, all.size()))};
}

std::optional<CodeHostUser> FixtureCorpus::get_code_user(std::string_view handle) {
  ++n_user_;
  const auto it = users_.find(to_lower_ascii(handle));
  if (it == users_.end()) return std::nullopt;
  if (const auto* err = std::get_if<RecordedError>(&it->second)) {
    if (err->kind == ErrorKind::UserNotFound) return std::nullopt;
    replay(err->kind, err->retry_after, "user " + std::string(handle));
  }
  return std::get<CodeHostUser>(it->second);
}

std::uint64_t FixtureCorpus::get_repo_language_bytes(std::string_view handle,
                                                     std::string_view language) {
  ++n_repos_;
  const std::string key = to_lower_ascii(handle);
  if (const auto user = users_.find(key);
      user == users_.end() ||
      (std::holds_alternative<RecordedError>(user->second) &&
       std::get<RecordedError>(user->second).kind == ErrorKind::UserNotFound)) {
    throw SourceError(ErrorKind::UserNotFound, "no user " + std::string(handle));
  }
  const auto it = repos_.find(key);
  if (it == repos_.end()) return 0;
  if (const auto* err = std::get_if<RecordedError>(&it->second)) {
    replay(err->kind, err->retry_after, "repos " + std::string(handle));
  }
  std::uint64_t total = 0;
  for (const auto& repo : std::get<std::vector<RepoLanguageStats>>(it->second)) {
    for (const auto& [name, bytes] : repo) {
      if (iequals_ascii(name, language)) total += bytes;
    }
  }
  return total;
}

Abstract FixtureCorpus::get_abstract(std::string_view resource_id) {
  ++n_abstract_;
  const auto it = abstracts_.find(std::string(resource_id));
  if (it == abstracts_.end()) {
    throw SourceError(ErrorKind::ResourceNotFound,
                      "no abstract for " + std::string(resource_id));
  }
  if (const auto* err = std::get_if<RecordedError>(&it->second)) {
    replay(err->kind, err->retry_after, "abstract " + std::string(resource_id));
  }
  return std::get<Abstract>(it->second);
}

CallCounts FixtureCorpus::call_counts() const noexcept {
  return {n_search_.load(), n_timeline_.load(), n_user_.load(), n_repos_.load(),
          n_abstract_.load()};
}

void FixtureCorpus::reset_call_counts() noexcept {
  n_search_ = 0;
  n_timeline_ = 0;
  n_user_ = 0;
  n_repos_ = 0;
  n_abstract_ = 0;
}

SourceSet FixtureCorpus::as_sources(std::shared_ptr<FixtureCorpus> corpus) {
  return SourceSet{corpus, corpus, corpus, BackendKind::Fixture};
}

}  // namespace expertquest::sources
