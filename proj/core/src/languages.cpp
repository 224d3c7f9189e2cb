#include "expertquest/languages.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <unordered_set>

namespace expertquest::search {
namespace {

// Display names follow the Tiobe top-50+ list; resources are the
// disambiguated encyclopedia titles.
const std::vector<LanguageEntry>& builtin_entries() {
  static const std::vector<LanguageEntry> entries{
      {"ABAP", "ABAP"},
      {"ActionScript", "ActionScript"},
      {"Ada", "Ada (programming language)"},
      {"Assembly language", "Assembly language"},
      {"AWK", "AWK"},
      {"Bash", "Bash (Unix shell)"},
      {"C", "C (programming language)"},
      {"C#", "C Sharp (programming language)"},
      {"C++", "C++"},
      {"Clojure", "Clojure"},
      {"COBOL", "COBOL"},
      {"CoffeeScript", "CoffeeScript"},
      {"D", "D (programming language)"},
      {"Dart", "Dart (programming language)"},
      {"Eiffel", "Eiffel (programming language)"},
      {"Erlang", "Erlang (programming language)"},
      {"F#", "F Sharp (programming language)"},
      {"Forth", "Forth (programming language)"},
      {"Fortran", "Fortran"},
      {"FoxPro", "FoxPro"},
      {"Go", "Go (programming language)"},
      {"Groovy", "Groovy (programming language)"},
      {"Haskell", "Haskell (programming language)"},
      {"Inform", "Inform"},
      {"Java", "Java (programming language)"},
      {"JavaScript", "JavaScript"},
      {"LabVIEW", "LabVIEW"},
      {"Lisp", "Lisp (programming language)"},
      {"Logo", "Logo (programming language)"},
      {"Lua", "Lua (programming language)"},
      {"MATLAB", "MATLAB"},
      {"Max", "Max (software)"},
      {"ML", "ML (programming language)"},
      {"Objective-C", "Objective-C"},
      {"OpenEdge ABL", "OpenEdge Advanced Business Language"},
      {"Pascal", "Pascal (programming language)"},
      {"Perl", "Perl"},
      {"PHP", "PHP"},
      {"PL/I", "PL/I"},
      {"PL/SQL", "PL/SQL"},
      {"PostScript", "PostScript"},
      {"Prolog", "Prolog"},
      {"Python", "Python (programming language)"},
      {"R", "R (programming language)"},
      {"RPG", "IBM RPG"},
      {"Ruby", "Ruby (programming language)"},
      {"Scala", "Scala (programming language)"},
      {"Scheme", "Scheme (programming language)"},
      {"Scratch", "Scratch (programming language)"},
      {"Smalltalk", "Smalltalk"},
      {"T-SQL", "Transact-SQL"},
      {"VB", "Visual Basic"},
      {"VB .NET", "Visual Basic .NET"},
  };
  return entries;
}

}  // namespace

LanguageList::LanguageList(std::vector<LanguageEntry> entries)
    : entries_(std::move(entries)) {
  std::unordered_set<std::string> seen;
  for (const auto& e : entries_) {
    if (e.display_name.empty() || e.resource_id.empty()) {
      throw std::invalid_argument("language entry with empty display or resource");
    }
    if (!seen.insert(e.display_name).second) {
      throw std::invalid_argument("duplicate language " + e.display_name);
    }
  }
}

const LanguageList& LanguageList::builtin() {
  static const LanguageList list(builtin_entries());
  return list;
}

LanguageList LanguageList::parse(std::string_view json_text) {
  std::vector<LanguageEntry> entries;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    if (!doc.is_array()) throw std::invalid_argument("languages: expected an array");
    for (const auto& item : doc) {
      entries.push_back({item.at("display").get<std::string>(),
                         item.at("resource").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("languages: ") + e.what());
  }
  return LanguageList(std::move(entries));
}

LanguageList LanguageList::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read language list " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  return parse(text);
}

const LanguageEntry* LanguageList::find(std::string_view display_name) const noexcept {
  for (const auto& e : entries_) {
    if (e.display_name == display_name) return &e;
  }
  return nullptr;
}

std::string LanguageList::to_json() const {
  auto doc = nlohmann::json::array();
  for (const auto& e : entries_) {
    doc.push_back(nlohmann::json{{"display", e.display_name},
                                         {"resource", e.resource_id}});
  }
  return doc.dump(2);
}

}  // namespace expertquest::search
