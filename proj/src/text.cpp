#include "snx/text.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace snx {
namespace {

constexpr char32_t kInvalid = 0xFFFD;

// Decodes one code point starting at text[pos]; advances pos. Malformed
// sequences decode to U+FFFD and consume a single byte.
char32_t decode(std::string_view text, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + len > text.size()) {
    ++pos;
    return kInvalid;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const auto c = static_cast<unsigned char>(text[pos + i]);
    if ((c & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  pos += len;
  return cp;
}

void encode(char32_t cp, std::string& out) {
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

// Simple one-to-one lowercase mapping for Latin, Greek and Cyrillic.
char32_t lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp < 0x80) return cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) return (cp % 2 == 0) ? cp + 1 : cp;
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  }
  if (cp == kInvalid) return false;
  if (cp < 0xC0) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols, arrows
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  if (cp >= 0xFF1A && cp <= 0xFF20) return false;
  if (cp == 0xFEFF) return false;
  return true;
}

}  // namespace

std::vector<Token> tokenize_with_offsets(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  Token current;
  bool in_word = false;
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = decode(text, pos);
    if (is_word_char(cp)) {
      if (!in_word) {
        current = Token{{}, start, start};
        in_word = true;
      }
      encode(lower(cp), current.text);
      current.end = pos;
    } else if (in_word) {
      tokens.push_back(std::move(current));
      in_word = false;
    }
  }
  if (in_word) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> words;
  for (auto& t : tokenize_with_offsets(text)) words.push_back(std::move(t.text));
  return words;
}

std::string fold_case(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = decode(text, pos);
    if (cp == kInvalid) {
      out.append(text.substr(start, pos - start));
    } else {
      encode(lower(cp), out);
    }
  }
  return out;
}

std::string normalize_name(std::string_view name) {
  const std::string folded = fold_case(name);
  std::string out;
  bool pending_space = false;
  for (char c : folded) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::size_t utf8_length(std::string_view text) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    decode(text, pos);
    ++n;
  }
  return n;
}

std::size_t utf8_char_index(std::string_view text, std::size_t offset) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    decode(text, pos);
    if (pos > offset) return n;
    ++n;
  }
  return n;
}

std::string utf8_substr(std::string_view text, std::size_t first_char, std::size_t max_chars) {
  std::size_t pos = 0;
  std::size_t index = 0;
  while (pos < text.size() && index < first_char) {
    decode(text, pos);
    ++index;
  }
  const std::size_t begin = pos;
  std::size_t taken = 0;
  while (pos < text.size() && taken < max_chars) {
    decode(text, pos);
    ++taken;
  }
  return std::string(text.substr(begin, pos - begin));
}

bool is_stopword(std::string_view word) {
  static constexpr std::array<std::string_view, 64> kStopwords = {
      "a",     "about", "after", "all",  "also",  "an",    "and",   "any",   "are",   "as",    "at",
      "be",    "been",  "but",   "by",   "can",   "for",   "from",  "had",   "has",   "have",  "he",
      "her",   "his",   "if",    "in",   "into",  "is",    "it",    "its",   "more",  "no",    "not",
      "of",    "on",    "one",   "or",   "our",   "she",   "so",    "such",  "than",  "that",  "the",
      "their", "them",  "then",  "there", "these", "they", "this",  "to",    "was",   "we",    "were",
      "what",  "when",  "which", "who",  "will",  "with",  "would", "you",   "your"};
  return std::binary_search(kStopwords.begin(), kStopwords.end(), word);
}

}  // namespace snx
