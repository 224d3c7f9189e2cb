#include "expertquest/textpipe.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace expertquest::textpipe {
namespace {

enum class CharKind { Keep, Space, Drop };

// Decodes one code point starting at text[i]; advances i. Returns nullopt
// for an invalid or truncated sequence (i advances by one byte).
std::optional<char32_t> next_code_point(std::string_view text, std::size_t& i) {
  const auto lead = static_cast<unsigned char>(text[i]);
  if (lead < 0x80) {
    ++i;
    return lead;
  }
  int extra = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++i;
    return std::nullopt;
  }
  if (i + extra >= text.size()) {
    ++i;
    return std::nullopt;
  }
  for (int k = 1; k <= extra; ++k) {
    const auto cont = static_cast<unsigned char>(text[i + k]);
    if ((cont & 0xC0) != 0x80) {
      ++i;
      return std::nullopt;
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  static constexpr char32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLength[extra] || cp > 0x10FFFF ||
      (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++i;
    return std::nullopt;
  }
  i += extra + 1;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

constexpr bool in(char32_t cp, char32_t lo, char32_t hi) {
  return cp >= lo && cp <= hi;
}

CharKind kind_of(char32_t cp) {
  if (cp < 0x80) {
    if (cp == ' ' || (cp >= '\t' && cp <= '\r')) return CharKind::Space;
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
        (cp >= '0' && cp <= '9')) {
      return CharKind::Keep;
    }
    return CharKind::Drop;
  }
  if (cp == 0x85 || cp == 0xA0 || cp == 0x1680 || in(cp, 0x2000, 0x200A) ||
      cp == 0x2028 || cp == 0x2029 || cp == 0x202F || cp == 0x205F ||
      cp == 0x3000) {
    return CharKind::Space;
  }
  // Latin-1 letters ª µ º survive; the rest of the block is symbols.
  if (in(cp, 0x80, 0xBF)) {
    return (cp == 0xAA || cp == 0xB5 || cp == 0xBA) ? CharKind::Keep
                                                    : CharKind::Drop;
  }
  if (cp == 0xD7 || cp == 0xF7) return CharKind::Drop;
  if (in(cp, 0x0300, 0x036F)) return CharKind::Drop;  // combining marks
  if (in(cp, 0x2000, 0x2BFF) || in(cp, 0x2E00, 0x2E7F) ||
      in(cp, 0x3001, 0x303F) || in(cp, 0xFE00, 0xFE0F) ||
      in(cp, 0xFE30, 0xFE6F) || in(cp, 0xFF01, 0xFF0F) ||
      in(cp, 0xFF1A, 0xFF20) || in(cp, 0xFF3B, 0xFF40) ||
      in(cp, 0xFF5B, 0xFF65) || cp == 0xFEFF || in(cp, 0x1F000, 0x1FAFF) ||
      in(cp, 0xE0000, 0xE007F)) {
    return CharKind::Drop;
  }
  return CharKind::Keep;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp < 0xC0) return cp;
  if (in(cp, 0xC0, 0xDE) && cp != 0xD7) return cp + 0x20;
  if (in(cp, 0x0100, 0x0137) || in(cp, 0x014A, 0x0177)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (in(cp, 0x0139, 0x0148) || in(cp, 0x0179, 0x017E)) {
    return (cp % 2 == 1) ? cp + 1 : cp;
  }
  if (cp == 0x0178) return 0xFF;
  if (in(cp, 0x0391, 0x03A9) && cp != 0x03A2) return cp + 0x20;
  if (in(cp, 0x0410, 0x042F)) return cp + 0x20;
  if (in(cp, 0x0400, 0x040F)) return cp + 0x50;
  return cp;
}

}  // namespace

std::string clean_string(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto cp = next_code_point(text, i);
    if (!cp) continue;
    switch (kind_of(*cp)) {
      case CharKind::Space:
        pending_space = true;
        break;
      case CharKind::Drop:
        break;
      case CharKind::Keep:
        if (pending_space && !out.empty()) out.push_back(' ');
        pending_space = false;
        append_utf8(out, to_lower(*cp));
        break;
    }
  }
  return out;
}

std::vector<std::string> preprocess(std::string_view text,
                                    const PosTagger& tagger) {
  const std::string cleaned = clean_string(text);
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start < cleaned.size()) {
    std::size_t end = cleaned.find(' ', start);
    if (end == std::string::npos) end = cleaned.size();
    const std::string_view word(cleaned.data() + start, end - start);
    if (!word.empty()) {
      const TokenClass cls = tagger.classify(word);
      if (cls == TokenClass::Noun || cls == TokenClass::Verb) {
        tokens.push_back(porter_stem(word));
      }
    }
    start = end + 1;
  }
  return tokens;
}

std::uint64_t hash_index(std::string_view word, std::uint64_t size) {
  if (size == 0) throw std::invalid_argument("hash_index: size must be >= 1");
  return static_cast<std::uint64_t>(crc32(word)) % size;
}

FeatureVector::FeatureVector(std::size_t size) {
  if (size == 0) throw std::invalid_argument("FeatureVector: size must be >= 1");
  counts_.assign(size, 0);
}

FeatureVector::FeatureVector(std::vector<Count> counts)
    : counts_(std::move(counts)) {
  if (counts_.empty()) {
    throw std::invalid_argument("FeatureVector: size must be >= 1");
  }
}

std::uint64_t FeatureVector::total() const noexcept {
  std::uint64_t sum = 0;
  for (Count c : counts_) sum += c;
  return sum;
}

bool FeatureVector::is_zero() const noexcept {
  for (Count c : counts_) {
    if (c != 0) return false;
  }
  return true;
}

FeatureVector vectorize_tokens(std::span<const std::string> tokens,
                               std::size_t size) {
  FeatureVector v(size);
  for (const auto& token : tokens) {
    v.increment(static_cast<std::size_t>(hash_index(token, size)));
  }
  return v;
}

FeatureVector vectorize(std::string_view text, std::size_t size,
                        const PosTagger& tagger) {
  if (size == 0) throw std::invalid_argument("vectorize: size must be >= 1");
  const auto tokens = preprocess(text, tagger);
  return vectorize_tokens(tokens, size);
}

Similarity::Similarity(double value) noexcept
    : value_(std::isnan(value) ? 0.0 : value < 0.0 ? 0.0
                                     : value > 1.0 ? 1.0
                                                   : value) {}

Similarity cosine_similarity(const FeatureVector& a, const FeatureVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine_similarity: vector sizes differ (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  // Integer accumulation keeps the result exactly symmetric.
  std::uint64_t dot = 0, norm_a = 0, norm_b = 0;
  const auto ca = a.counts();
  const auto cb = b.counts();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const std::uint64_t x = ca[i], y = cb[i];
    dot += x * y;
    norm_a += x * x;
    norm_b += y * y;
  }
  if (norm_a == 0 || norm_b == 0) return Similarity(0.0);
  const double denom =
      std::sqrt(static_cast<double>(norm_a) * static_cast<double>(norm_b));
  return Similarity(static_cast<double>(dot) / denom);
}

}  // namespace expertquest::textpipe
