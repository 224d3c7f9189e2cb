#include "expertquest/tagger.hpp"

#include <algorithm>
#include <array>

namespace expertquest::textpipe {
namespace {

// Determiners, pronouns, prepositions, conjunctions, modals, particles.
constexpr std::array kFunctionWords = std::to_array<std::string_view>({
    "a", "about", "above", "across", "after", "against", "all", "along",
    "although", "among", "an", "and", "another", "any", "anybody",
    "anyone", "around", "as", "at", "because", "before", "behind", "below",
    "beneath", "beside", "besides", "between", "beyond", "both", "but", "by",
    "can", "cannot", "could", "despite", "down", "during", "each", "either",
    "every", "everybody", "everyone", "except", "few", "for", "from", "he",
    "her", "hers", "herself", "him", "himself", "his", "how", "i", "if", "in",
    "inside", "into", "it", "its", "itself", "like", "may", "me", "might",
    "mine", "must", "my", "myself", "near", "neither", "no", "nobody", "none",
    "nor", "not", "of", "off", "on", "onto", "or", "ought", "our", "ours",
    "ourselves", "out", "outside", "over", "past", "per", "shall", "she",
    "should", "since", "so", "some", "somebody", "someone", "than", "that",
    "the", "their", "theirs", "them", "themselves", "these", "they", "this",
    "those", "though", "through", "throughout", "till", "to", "toward",
    "towards", "under", "unless", "until", "unto", "up", "upon", "us", "via",
    "we", "what", "whatever", "when", "whenever", "where", "whereas",
    "wherever", "whether", "which", "whichever", "while", "who", "whoever",
    "whom", "whose", "why", "will", "with", "within", "without", "would",
    "yet", "you", "your", "yours", "yourself", "yourselves",
    // Interjections and microblog noise.
    "amp", "hey", "lol", "oh", "ok", "okay", "rt", "yes", "yeah", "wow",
});

// Common adjectives.
constexpr std::array kAdjectives = std::to_array<std::string_view>({
    "able", "amazing", "available", "awesome", "bad", "beautiful", "best",
    "better", "big", "black", "blue", "bright", "brown", "cheap", "clean",
    "clear", "close", "cold", "common", "complete", "complex", "concurrent",
    "cool", "correct", "current", "dark", "dead", "deep", "different",
    "difficult", "dynamic", "early", "easy", "elegant", "empty", "entire",
    "explicit", "false", "fast", "fine", "first", "free", "fresh", "full",
    "functional", "generic", "good", "great", "green", "grey", "gray", "happy",
    "hard", "heavy", "high", "hot", "huge", "immutable", "important",
    "interesting", "large", "last", "late", "lazy", "least", "left", "less",
    "little", "long", "low", "main", "major", "many", "modern", "more", "most",
    "much", "multithreaded", "native", "necessary", "new", "next", "nice",
    "official", "old", "only", "open", "orange", "other", "own", "pink",
    "popular", "possible", "pretty", "previous", "private", "public", "pure",
    "purple", "quick", "ready", "real", "recent", "red", "robust", "sad",
    "same", "second", "several", "short", "similar", "simple", "slow", "small",
    "sophisticated", "special", "static", "strict", "strong", "such", "sure",
    "third", "tiny", "true", "useful", "various", "weak", "whole", "wide",
    "white", "wrong", "yellow", "young",
});

// Common adverbs.
constexpr std::array kAdverbs = std::to_array<std::string_view>({
    "again", "ago", "almost", "already", "also", "always", "anyway",
    "anywhere", "away", "else", "even", "ever", "everywhere", "far", "here",
    "however", "just", "maybe", "never", "now", "often", "perhaps", "quite",
    "rather", "really", "sometimes", "somewhere", "soon", "still", "then",
    "there", "therefore", "thus", "today", "together", "tomorrow", "tonight",
    "too", "very", "well", "yesterday",
});

// Auxiliaries and irregular verb forms the suffix rules cannot see.
constexpr std::array kVerbs = std::to_array<std::string_view>({
    "am", "are", "ate", "be", "became", "become", "been", "began", "begun",
    "being", "bought", "broke", "broken", "brought", "built", "came",
    "chose", "chosen", "did", "do", "does", "done", "drew", "drove", "fell",
    "felt", "flew", "forgot", "found", "gave", "given", "go", "goes", "gone",
    "got", "gotten", "grew", "had", "has", "have", "held", "hid", "is",
    "kept", "knew", "known", "led", "lost", "made", "meant", "met", "paid",
    "ran", "rode", "rose", "said", "sang", "sat", "saw", "seen", "sent",
    "shot", "showed", "shown", "slept", "sold", "spent", "spoke", "spoken",
    "stole", "stood", "swam", "taken", "taught", "thought", "threw", "told",
    "took", "understood", "was", "went", "were", "won", "wore", "wrote",
    "written",
});

// Words with a verb/adverb/adjective-looking suffix that are nouns.
constexpr std::array kSuffixExceptions = std::to_array<std::string_view>({
    // -ing
    "anything", "ceiling", "evening", "everything", "king", "morning",
    "nothing", "ring", "sibling", "something", "spring", "string", "thing",
    "wing",
    // -ed
    "bed", "bred", "feed", "hundred", "need", "seed", "shed", "sled", "speed",
    "weed",
    // -ly
    "ally", "anomaly", "apply", "assembly", "belly", "bully", "butterfly",
    "comply", "family", "fly", "italy", "jelly", "july", "lily", "monopoly",
    "multiply", "rally", "rely", "reply", "supply",
    // -ful
    "cupful", "handful", "mouthful", "spoonful",
});

bool has_suffix(std::string_view w, std::string_view s) {
  return w.size() > s.size() && w.substr(w.size() - s.size()) == s;
}

bool all_digits(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

}  // namespace

std::string_view to_string(TokenClass c) noexcept {
  switch (c) {
    case TokenClass::Noun: return "noun";
    case TokenClass::Verb: return "verb";
    case TokenClass::Other: return "other";
  }
  return "other";
}

LexiconTagger::LexiconTagger() {
  for (auto w : kFunctionWords) lexicon_.emplace(w, TokenClass::Other);
  for (auto w : kAdjectives) lexicon_.emplace(w, TokenClass::Other);
  for (auto w : kAdverbs) lexicon_.emplace(w, TokenClass::Other);
  for (auto w : kVerbs) lexicon_.emplace(w, TokenClass::Verb);
  for (auto w : kSuffixExceptions) lexicon_.emplace(w, TokenClass::Noun);
}

LexiconTagger::LexiconTagger(std::unordered_map<std::string, TokenClass> lexicon)
    : lexicon_(std::move(lexicon)) {}

void LexiconTagger::set(std::string word, TokenClass cls) {
  lexicon_.insert_or_assign(std::move(word), cls);
}

TokenClass LexiconTagger::classify(std::string_view word) const {
  if (auto it = lexicon_.find(std::string(word)); it != lexicon_.end()) {
    return it->second;
  }
  if (all_digits(word)) return TokenClass::Other;

  if (word.size() > 4 && has_suffix(word, "ing")) return TokenClass::Verb;
  if (word.size() > 3 && has_suffix(word, "ed")) return TokenClass::Verb;
  if (word.size() > 3 && has_suffix(word, "ly")) return TokenClass::Other;
  if (has_suffix(word, "ous") || has_suffix(word, "ful") ||
      has_suffix(word, "less")) {
    return TokenClass::Other;
  }
  return TokenClass::Noun;
}

const PosTagger& default_tagger() {
  static const LexiconTagger instance;
  return instance;
}

TokenClass classify_token(std::string_view word) {
  return default_tagger().classify(word);
}

}  // namespace expertquest::textpipe
