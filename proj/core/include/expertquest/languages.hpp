#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace expertquest::search {

/// A selectable language and the encyclopedia resource that describes it
/// (e.g. "Java" -> "Java (programming language)").
struct LanguageEntry {
  std::string display_name;
  std::string resource_id;

  friend bool operator==(const LanguageEntry&, const LanguageEntry&) = default;
};

/// Ordered, immutable list of configured languages with unique display
/// names.
class LanguageList {
 public:
  /// Throws std::invalid_argument on empty names or duplicates.
  explicit LanguageList(std::vector<LanguageEntry> entries);

  /// The 53-language default list.
  static const LanguageList& builtin();
  /// JSON array of {"display": ..., "resource": ...}.
  static LanguageList parse(std::string_view json_text);
  static LanguageList load(const std::filesystem::path& path);

  const std::vector<LanguageEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// Exact display-name match, or nullptr.
  const LanguageEntry* find(std::string_view display_name) const noexcept;

  std::string to_json() const;

 private:
  std::vector<LanguageEntry> entries_;
};

}  // namespace expertquest::search
