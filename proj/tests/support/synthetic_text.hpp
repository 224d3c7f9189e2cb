#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <string_view>

namespace expertquest::testing {

/// Seeded novel-like prose: sentences of 6-18 words, commas, paragraph
/// breaks, a few capitalized names and some UTF-8 punctuation.
inline std::string synthetic_novel(std::size_t words, std::uint32_t seed = 1908) {
  static constexpr std::string_view kVocab[] = {
      "the", "and", "of", "to", "a", "in", "was", "she", "her", "it", "that",
      "had", "with", "for", "on", "as", "said", "but", "you", "at", "not",
      "house", "orchard", "green", "gables", "kitchen", "window", "road",
      "school", "teacher", "lesson", "dress", "sleeve", "apple", "tree",
      "brook", "lane", "bridge", "garden", "flower", "morning", "evening",
      "walked", "looked", "thought", "wondered", "imagined", "talking",
      "running", "laughing", "crying", "believe", "remember", "wanted",
      "little", "very", "quite", "beautiful", "dreadful", "perfectly",
      "friend", "bosom", "spirit", "cordial", "raspberry", "pond", "lake",
      "shining", "waters", "white", "way", "delight", "birch", "path",
      "slate", "head", "hair", "red", "carrots", "freckles", "scope",
      "imagination", "brother", "sister", "farm", "horse", "buggy", "station",
      "train", "island", "prince", "edward", "avonlea", "church", "minister",
      "picnic", "ice", "cream", "brooch", "amethyst", "concert", "recitation",
      "queens", "college", "examination", "scholarship", "studying", "books",
  };
  static constexpr std::string_view kNames[] = {"Anne", "Marilla", "Matthew",
                                                "Diana", "Gilbert", "Rachel"};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(kVocab) - 1);
  std::uniform_int_distribution<std::size_t> pick_name(0, std::size(kNames) - 1);
  std::uniform_int_distribution<int> sentence_len(6, 18);
  std::uniform_int_distribution<int> roll(0, 99);

  std::string out;
  out.reserve(words * 7);
  std::size_t written = 0;
  int sentences = 0;
  while (written < words) {
    const int len = sentence_len(rng);
    for (int i = 0; i < len && written < words; ++i, ++written) {
      if (i > 0) out += ' ';
      const int r = roll(rng);
      if (r < 4) {
        out += kNames[pick_name(rng)];
      } else {
        std::string_view w = kVocab[pick(rng)];
        if (i == 0) {
          out += static_cast<char>(w[0] - 'a' + 'A');
          out += w.substr(1);
        } else {
          out += w;
        }
      }
      if (r >= 90 && i + 1 < len) out += ',';
    }
    const int end = roll(rng);
    out += end < 80 ? "." : end < 90 ? "!" : "\xE2\x80\x9D";  // right double quote
    out += (++sentences % 7 == 0) ? "\n\n" : " ";
  }
  return out;
}

}  // namespace expertquest::testing
