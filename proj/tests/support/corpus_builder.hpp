#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <string>

#include "expertquest/json_io.hpp"

namespace expertquest::testing {

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("expertquest-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Writes fixture corpus files in the documented layout.
class CorpusBuilder {
 public:
  explicit CorpusBuilder(std::filesystem::path root) : root_(std::move(root)) {
    for (const char* sub : {"searches", "timelines", "users", "repos", "abstracts"}) {
      std::filesystem::create_directories(root_ / sub);
    }
  }

  CorpusBuilder& search(const std::string& query, const std::vector<sources::Post>& posts) {
    write("searches", sources::percent_encode(query), posts);
    return *this;
  }
  CorpusBuilder& timeline(const std::string& handle, const std::vector<sources::Post>& posts) {
    write("timelines", sources::to_lower_ascii(handle), posts);
    return *this;
  }
  CorpusBuilder& user(const sources::CodeHostUser& u) {
    write("users", sources::to_lower_ascii(u.handle), u);
    return *this;
  }
  CorpusBuilder& repos(const std::string& handle,
                       const std::vector<sources::RepoLanguageStats>& repos) {
    write("repos", sources::to_lower_ascii(handle), repos);
    return *this;
  }
  CorpusBuilder& abstract(const sources::Abstract& a) {
    write("abstracts", sources::percent_encode(a.resource_id), a);
    return *this;
  }
  CorpusBuilder& raw(const std::string& sub, const std::string& stem, const std::string& body) {
    std::ofstream(root_ / sub / (stem + ".json"), std::ios::binary) << body;
    return *this;
  }

  const std::filesystem::path& root() const { return root_; }

 private:
  template <typename T>
  void write(const char* sub, const std::string& stem, const T& value) {
    const nlohmann::json doc = value;
    std::ofstream(root_ / sub / (stem + ".json"), std::ios::binary) << doc.dump(2);
  }

  std::filesystem::path root_;
};

inline sources::Post make_post(std::string handle, std::string text,
                               std::uint64_t followers = 10) {
  return {handle, handle + " name", followers, std::move(text)};
}

}  // namespace expertquest::testing
