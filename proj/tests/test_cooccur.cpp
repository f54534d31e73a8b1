#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "snx/cooccur.hpp"
#include "snx/error.hpp"

namespace snx {
namespace {

TEST(Jaccard, HitCountExample) {
  // 13 / (1200 + 3870 - 13)
  EXPECT_NEAR(jaccard_similarity({1200, 3870, 13}), 13.0 / 5057.0, 1e-15);
  EXPECT_NEAR(jaccard_similarity({1200, 3870, 13}), 0.002571, 5e-7);
}

TEST(Jaccard, IdenticalAndDisjoint) {
  EXPECT_EQ(jaccard_similarity({9, 9, 9}), 1.0);
  EXPECT_EQ(jaccard_similarity({5, 7, 0}), 0.0);
}

TEST(Jaccard, UndefinedWhenBothSingletonsZero) {
  try {
    jaccard_similarity({0, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UndefinedSimilarity);
  }
}

TEST(Jaccard, RejectsBrokenHitCounts) {
  EXPECT_THROW(jaccard_similarity({3, 10, 4}), Error);
}

TEST(Jaccard, SymmetricAndMonotone) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<std::size_t> count(1, 5000);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t a = count(rng);
    const std::size_t b = count(rng);
    std::uniform_int_distribution<std::size_t> dd(0, std::min(a, b) - 1);
    const std::size_t d = dd(rng);
    EXPECT_EQ(jaccard_similarity({a, b, d}), jaccard_similarity({b, a, d}));
    EXPECT_LT(jaccard_similarity({a, b, d}), jaccard_similarity({a, b, d + 1}));
  }
}

Document doc(std::string id, std::string body, std::string url = "http://x.org/") {
  return Document{std::move(id), std::move(url), "", std::move(body), "test"};
}

std::vector<Actor> actors(std::initializer_list<const char*> names) {
  std::vector<Actor> out;
  for (const char* n : names) out.push_back(Actor{n, {}});
  return out;
}

TEST(ScoreAllPairs, TwoActorsOnePair) {
  const auto corpus = Corpus::ingest({doc("d1", "ann lee and bo chan"), doc("d2", "ann lee")});
  const auto a = actors({"Ann Lee", "Bo Chan"});
  const auto scores = score_all_pairs(corpus, a, Method::SRS);
  ASSERT_EQ(scores.size(), 1u);
  EXPECT_EQ(scores[0].actor_a, "Ann Lee");
  EXPECT_DOUBLE_EQ(scores[0].score, 1.0 / 2.0);  // hits (2, 1, 1)
}

TEST(ScoreAllPairs, PairCountForLargeActorSet) {
  std::vector<Document> docs;
  for (int i = 0; i < 40; ++i) docs.push_back(doc("d" + std::to_string(i), "p" + std::to_string(i % 213) + " p" + std::to_string((i * 7) % 213)));
  const auto corpus = Corpus::ingest(docs);
  std::vector<Actor> people;
  for (int i = 0; i < 213; ++i) people.push_back(Actor{"p" + std::to_string(i), {}});
  const auto scores = score_all_pairs(corpus, people, Method::SRS);
  EXPECT_EQ(scores.size(), 22578u);  // 213 * 212 / 2
  std::size_t undefined = 0;
  for (const auto& s : scores) undefined += s.undefined;
  EXPECT_GT(undefined, 0u);  // most synthetic names never occur
}

TEST(ScoreAllPairs, MatchesPerPairBruteForce) {
  std::mt19937 rng(43);
  const auto docs = oracle::random_corpus(rng, 60, 1200, 8);
  const auto corpus = Corpus::ingest(docs);
  std::vector<Actor> people;
  for (int i = 0; i < 8; ++i) people.push_back(Actor{"w" + std::to_string(i), {}});
  const auto scores = score_all_pairs(corpus, people, Method::SRS);
  std::size_t k = 0;
  for (std::size_t i = 0; i < people.size(); ++i) {
    for (std::size_t j = i + 1; j < people.size(); ++j, ++k) {
      const double a = static_cast<double>(oracle::scan_count(docs, people[i].name));
      const double b = static_cast<double>(oracle::scan_count(docs, people[j].name));
      const double d = static_cast<double>(oracle::scan_both(docs, people[i].name, people[j].name));
      const double expected = (a + b == 0) ? 0.0 : d / (a + b - d);
      EXPECT_DOUBLE_EQ(scores[k].score, expected);
    }
  }
}

TEST(ScoreAllPairs, UndefinedPairsAreFlaggedZeros) {
  const auto corpus = Corpus::ingest({doc("d1", "nothing here")});
  const auto scores = score_all_pairs(corpus, actors({"Ann", "Bo"}), Method::SRS);
  ASSERT_EQ(scores.size(), 1u);
  EXPECT_TRUE(scores[0].undefined);
  EXPECT_EQ(scores[0].score, 0.0);
}

TEST(ScoreAllPairs, UsrUsesUrlVectors) {
  const auto corpus = Corpus::ingest({doc("d1", "ann", "http://u.edu/staff/ann"), doc("d2", "bo", "http://u.edu/staff/bo"),
                                      doc("d3", "cy", "http://other.com/cy")});
  const auto scores = score_all_pairs(corpus, actors({"ann", "bo", "cy"}), Method::USR);
  ASSERT_EQ(scores.size(), 3u);
  // ann {u.edu:3, u.edu/staff:3, u.edu/staff/ann:3}; bo likewise -> 18 / 27
  EXPECT_NEAR(scores[0].score, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(scores[1].score, 0.0);
  EXPECT_EQ(scores[0].method, Method::USR);
}

TEST(ScoreAllPairs, KeywordModeNarrowsDoubleton) {
  const auto corpus = Corpus::ingest({doc("d1", "ann and bo ontology"), doc("d2", "ann and bo football"), doc("d3", "ann"),
                                      doc("d4", "bo")});
  PairScoringOptions options;
  options.mode = QueryMode::K1;
  options.keywords = {{"ann", {"ontology"}}, {"bo", {"ontology", "football"}}};
  const auto scores = score_all_pairs(corpus, actors({"ann", "bo"}), Method::SRS, options);
  EXPECT_DOUBLE_EQ(scores[0].score, 1.0 / 5.0);  // hits (3, 3, 1)
  EXPECT_FALSE(scores[0].keyword_fallback);
  options.mode = QueryMode::K1K2;
  options.keywords = {{"ann", {}}, {"bo", {"ontology"}}};
  const auto fallback = score_all_pairs(corpus, actors({"ann", "bo"}), Method::SRS, options);
  EXPECT_TRUE(fallback[0].keyword_fallback);
  EXPECT_DOUBLE_EQ(fallback[0].score, 2.0 / 4.0);
}

TEST(ScoreAllPairs, RejectsTooFewActorsAndArs) {
  const auto corpus = Corpus::ingest({});
  EXPECT_THROW(score_all_pairs(corpus, actors({"a"}), Method::SRS), Error);
  EXPECT_THROW(score_all_pairs(corpus, actors({"a", "b"}), Method::ARS), Error);
}

TEST(PairKeywords, SharedFirst) {
  const std::vector<std::string> a{"x", "y", "z"};
  const std::vector<std::string> b{"z", "w"};
  EXPECT_EQ(pair_keywords(a, b), (std::vector<std::string>{"z", "x", "y", "w"}));
}

std::vector<PairScore> sample_scores() {
  return {{"a", "b", 0.5, Method::SRS}, {"a", "c", 0.0001, Method::SRS}, {"b", "c", 0.2, Method::SRS}};
}

TEST(Threshold, StrictAndOrderPreserving) {
  const auto s = sample_scores();
  const auto kept = threshold_relations(s, 0.0001);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].actor_b, "b");
  EXPECT_EQ(kept[1].actor_a, "b");
  EXPECT_EQ(threshold_relations(s, 0.0001, false).size(), 3u);
}

TEST(Threshold, IdentityAndEmpty) {
  const auto s = sample_scores();
  EXPECT_EQ(threshold_relations(s, 0.0).size(), 3u);
  EXPECT_TRUE(threshold_relations(s, 0.6).empty());
}

TEST(Threshold, SubsetAndIdempotent) {
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<PairScore> s;
  for (int i = 0; i < 300; ++i) s.push_back({"a" + std::to_string(i), "b", u(rng), Method::SRS});
  const auto once = threshold_relations(s, 0.3);
  const auto twice = threshold_relations(once, 0.3);
  ASSERT_EQ(once.size(), twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) EXPECT_EQ(once[i].actor_a, twice[i].actor_a);
}

TEST(Threshold, DefaultAlphas) {
  EXPECT_EQ(kDefaultAlphaSrs, 0.0001);
  EXPECT_EQ(kDefaultAlphaUsr, 0.01);
}

TEST(ScoresCsv, QuotesAwkwardNames) {
  std::ostringstream out;
  const std::vector<PairScore> s{{"Lee, Ann", "Bo", 0.25, Method::USR}};
  write_scores_csv(out, s);
  EXPECT_EQ(out.str(), "actor_a,actor_b,method,score\n\"Lee, Ann\",Bo,usr,0.25\n");
}

}  // namespace
}  // namespace snx
