#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace snx {

/// A lowercased word plus the byte range it came from in the source text.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Word segmentation over UTF-8. Letters and digits (ASCII and non-ASCII
// letters) form words; everything else separates. Output is case-folded.
std::vector<Token> tokenize_with_offsets(std::string_view text);
std::vector<std::string> tokenize(std::string_view text);

std::string fold_case(std::string_view text);

/// Case-fold and collapse whitespace runs to one space; trims both ends.
std::string normalize_name(std::string_view name);

/// Truncate `text` to at most `max_chars` code points starting at code point
/// `first_char`.
std::string utf8_substr(std::string_view text, std::size_t first_char, std::size_t max_chars);
std::size_t utf8_length(std::string_view text);
/// Code point index of the character containing byte `offset`.
std::size_t utf8_char_index(std::string_view text, std::size_t offset);

bool is_stopword(std::string_view word);

}  // namespace snx
