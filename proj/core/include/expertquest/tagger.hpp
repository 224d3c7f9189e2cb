#pragma once

#include <string>
#include <string_view>
#include <unordered_map>

namespace expertquest::textpipe {

enum class TokenClass { Noun, Verb, Other };

std::string_view to_string(TokenClass c) noexcept;

/// Part-of-speech classifier used by the noun/verb filter. Implementations
/// must be deterministic and safe to call concurrently.
class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual TokenClass classify(std::string_view word) const = 0;
};

/// Dependency-free default tagger.
///
/// Resolution order for a cleaned, lowercase token:
///   1. explicit lexicon entry (function words, common adjectives and
///      adverbs map to Other; irregular verb forms map to Verb);
///   2. purely numeric tokens are Other;
///   3. suffix rules: -ing / -ed give Verb, -ly / -ous / -ful / -less give
///      Other (each with a short list of noun exceptions);
///   4. everything else is a Noun.
class LexiconTagger final : public PosTagger {
 public:
  LexiconTagger();
  explicit LexiconTagger(std::unordered_map<std::string, TokenClass> lexicon);

  TokenClass classify(std::string_view word) const override;

  /// Adds or replaces a lexicon entry.
  void set(std::string word, TokenClass cls);

 private:
  std::unordered_map<std::string, TokenClass> lexicon_;
};

/// Process-wide immutable instance of LexiconTagger.
const PosTagger& default_tagger();

/// Classifies with the default tagger.
TokenClass classify_token(std::string_view word);

}  // namespace expertquest::textpipe
