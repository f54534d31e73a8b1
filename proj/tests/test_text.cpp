#include <gtest/gtest.h>

#include "snx/text.hpp"

namespace snx {
namespace {

TEST(Tokenize, LowercasesAndSplitsOnPunctuation) {
  EXPECT_EQ(tokenize("Alice meets BOB, again!"), (std::vector<std::string>{"alice", "meets", "bob", "again"}));
  EXPECT_TRUE(tokenize("  ...  ").empty());
}

TEST(Tokenize, NonAsciiLettersStayInWords) {
  EXPECT_EQ(tokenize("Ümit ÇELIK café\xE2\x80\x94naïve"), (std::vector<std::string>{"ümit", "çelik", "café", "naïve"}));
  EXPECT_EQ(tokenize("ΑΘΗΝΑ Москва"), (std::vector<std::string>{"αθηνα", "москва"}));
}

TEST(Tokenize, OffsetsPointIntoSource) {
  const std::string text = "Hi, Wörld";
  const auto tokens = tokenize_with_offsets(text);
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(text.substr(tokens[1].begin, tokens[1].end - tokens[1].begin), "Wörld");
}

TEST(Tokenize, InvalidUtf8Separates) {
  const std::string text = std::string("ab") + '\xff' + "cd";
  EXPECT_EQ(tokenize(text), (std::vector<std::string>{"ab", "cd"}));
}

TEST(NormalizeName, FoldsCaseAndCollapsesWhitespace) {
  EXPECT_EQ(normalize_name("  Abdul   Razak\tHAMDAN "), "abdul razak hamdan");
  EXPECT_EQ(normalize_name(""), "");
}

TEST(Utf8, SubstrCountsCodePoints) {
  EXPECT_EQ(utf8_length("añb"), 3u);
  EXPECT_EQ(utf8_substr("añbc", 1, 2), "ñb");
  EXPECT_EQ(utf8_char_index("añb", 3), 2u);
}

TEST(Stopwords, Lookup) {
  EXPECT_TRUE(is_stopword("the"));
  EXPECT_FALSE(is_stopword("ontology"));
}

}  // namespace
}  // namespace snx
