#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expertquest/crc32.hpp"
#include "expertquest/porter.hpp"
#include "expertquest/tagger.hpp"

namespace expertquest::textpipe {

inline constexpr std::size_t kDefaultVectorSize = 256;

/// Lowercases, strips everything that is not a letter, digit or whitespace,
/// collapses whitespace runs to one space and trims. Input is UTF-8;
/// invalid byte sequences are dropped. Case folding covers Latin, Greek
/// and Cyrillic; other scripts pass through unchanged.
std::string clean_string(std::string_view text);

/// clean_string, split on spaces, keep nouns and verbs, stem each survivor.
/// Order and duplicates are preserved.
std::vector<std::string> preprocess(std::string_view text,
                                    const PosTagger& tagger = default_tagger());

/// crc32(word) mod size. `size` is 64-bit so that 2^32 is expressible.
std::uint64_t hash_index(std::string_view word, std::uint64_t size);

/// Fixed-length bucket counts produced by the hash trick.
class FeatureVector {
 public:
  using Count = std::uint32_t;

  /// All-zero vector; throws std::invalid_argument when size == 0.
  explicit FeatureVector(std::size_t size);
  /// Takes ownership of explicit counts; throws when counts is empty.
  explicit FeatureVector(std::vector<Count> counts);

  std::size_t size() const noexcept { return counts_.size(); }
  std::span<const Count> counts() const noexcept { return counts_; }
  Count operator[](std::size_t i) const { return counts_.at(i); }
  std::uint64_t total() const noexcept;
  bool is_zero() const noexcept;

  void increment(std::size_t bucket) { ++counts_.at(bucket); }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<Count> counts_;
};

/// Hashes every token of preprocess(text) into a fresh vector of `size`
/// buckets.
FeatureVector vectorize(std::string_view text,
                        std::size_t size = kDefaultVectorSize,
                        const PosTagger& tagger = default_tagger());

/// Vectorizes already-preprocessed tokens.
FeatureVector vectorize_tokens(std::span<const std::string> tokens,
                               std::size_t size = kDefaultVectorSize);

/// A similarity score in [0, 1].
class Similarity {
 public:
  constexpr Similarity() = default;
  /// Clamps into [0, 1]; NaN becomes 0.
  explicit Similarity(double value) noexcept;

  constexpr double value() const noexcept { return value_; }
  friend constexpr auto operator<=>(Similarity, Similarity) = default;

 private:
  double value_ = 0.0;
};

/// dot(a, b) / (|a| |b|), or 0 when either vector is all zeros.
/// Throws std::invalid_argument on a size mismatch.
Similarity cosine_similarity(const FeatureVector& a, const FeatureVector& b);

}  // namespace expertquest::textpipe
