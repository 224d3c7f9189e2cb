#include "expertquest/porter.hpp"

#include <array>

namespace expertquest::textpipe {
namespace {

// Working state for one word. `end` is one past the last character of the
// current word; `stem_end` marks where a matched suffix starts.
class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word), end_(word.size()) {}

  std::string run() {
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return b_.substr(0, end_);
  }

 private:
  bool is_consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !is_consonant(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && is_consonant(i)) ++i;
    while (i < len) {
      while (i < len && !is_consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && is_consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!is_consonant(i)) return true;
    }
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && is_consonant(len - 1);
  }

  // consonant-vowel-consonant ending at len-1, last not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    const std::size_t i = len - 1;
    if (!is_consonant(i) || is_consonant(i - 1) || !is_consonant(i - 2)) {
      return false;
    }
    const char c = b_[i];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends_with(std::string_view suffix) const {
    if (suffix.size() > end_) return false;
    return std::string_view(b_).substr(end_ - suffix.size(), suffix.size()) ==
           suffix;
  }

  void replace_suffix(std::size_t suffix_len, std::string_view with) {
    b_.replace(end_ - suffix_len, suffix_len, with);
    end_ = end_ - suffix_len + with.size();
    b_.resize(end_);
  }

  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };

  void step1a() {
    if (ends_with("sses")) {
      replace_suffix(4, "ss");
    } else if (ends_with("ies")) {
      replace_suffix(3, "i");
    } else if (ends_with("ss")) {
      // unchanged
    } else if (ends_with("s")) {
      replace_suffix(1, "");
    }
  }

  void step1b() {
    if (ends_with("eed")) {
      if (measure(end_ - 3) > 0) replace_suffix(3, "ee");
      return;
    }
    bool stripped = false;
    if (ends_with("ed") && has_vowel(end_ - 2)) {
      replace_suffix(2, "");
      stripped = true;
    } else if (ends_with("ing") && has_vowel(end_ - 3)) {
      replace_suffix(3, "");
      stripped = true;
    }
    if (!stripped) return;

    if (ends_with("at")) {
      replace_suffix(2, "ate");
    } else if (ends_with("bl")) {
      replace_suffix(2, "ble");
    } else if (ends_with("iz")) {
      replace_suffix(2, "ize");
    } else if (double_consonant(end_)) {
      const char c = b_[end_ - 1];
      if (c != 'l' && c != 's' && c != 'z') replace_suffix(1, "");
    } else if (measure(end_) == 1 && cvc(end_)) {
      replace_suffix(0, "e");
    }
  }

  void step1c() {
    if (ends_with("y") && has_vowel(end_ - 1)) {
      b_[end_ - 1] = 'i';
    }
  }

  void step2() {
    static constexpr std::array<Rule, 20> kRules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
        {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
        {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
        {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
        {"iviti", "ive"},   {"biliti", "ble"},
    }};
    apply_longest(kRules, 0);
  }

  void step3() {
    static constexpr std::array<Rule, 7> kRules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    apply_longest(kRules, 0);
  }

  void step4() {
    static constexpr std::array<std::string_view, 19> kSuffixes{
        "al",  "ance", "ence", "er",  "ic",  "able", "ible",
        "ant", "ement", "ment", "ent", "ion", "ou",   "ism",
        "ate", "iti",  "ous",  "ive", "ize",
    };
    std::string_view best;
    for (std::string_view s : kSuffixes) {
      if (s.size() > best.size() && ends_with(s)) best = s;
    }
    if (best.empty()) return;
    const std::size_t stem = end_ - best.size();
    if (measure(stem) <= 1) return;
    if (best == "ion") {
      if (stem == 0 || (b_[stem - 1] != 's' && b_[stem - 1] != 't')) return;
    }
    replace_suffix(best.size(), "");
  }

  void step5a() {
    if (!ends_with("e")) return;
    const std::size_t stem = end_ - 1;
    const int m = measure(stem);
    if (m > 1 || (m == 1 && !cvc(stem))) replace_suffix(1, "");
  }

  void step5b() {
    if (measure(end_) > 1 && double_consonant(end_) && b_[end_ - 1] == 'l') {
      replace_suffix(1, "");
    }
  }

  // Among rules whose suffix matches, picks the longest one.
  template <std::size_t N>
  void apply_longest(const std::array<Rule, N>& rules, int min_measure) {
    const Rule* best = nullptr;
    for (const Rule& r : rules) {
      if (ends_with(r.suffix) &&
          (best == nullptr || r.suffix.size() > best->suffix.size())) {
        best = &r;
      }
    }
    if (best == nullptr) return;
    if (measure(end_ - best->suffix.size()) > min_measure) {
      replace_suffix(best->suffix.size(), best->replacement);
    }
  }

  std::string b_;
  std::size_t end_;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.size() <= 2) return std::string(word);
  return Stemmer(word).run();
}

}  // namespace expertquest::textpipe
