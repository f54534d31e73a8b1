#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "snx/corpus.hpp"
#include "snx/keywords.hpp"
#include "snx/network.hpp"
#include "snx/url.hpp"

namespace snx {

/// Relation strength for an unordered actor pair.
struct PairScore {
  std::string actor_a;
  std::string actor_b;
  double score = 0.0;
  Method method = Method::SRS;
  /// Set when the similarity was undefined (0/0); score is then 0.
  bool undefined = false;
  /// Set when a keyword query mode fell back to the bare name pair because
  /// the pair had too few keywords.
  bool keyword_fallback = false;
};

/// |a and b| / (|a| + |b| - |a and b|). Throws UndefinedSimilarity when both
/// singletons are zero and InvalidArgument when the doubleton exceeds either
/// singleton.
double jaccard_similarity(const HitCounts& hits);

inline constexpr double kDefaultAlphaSrs = 0.0001;
inline constexpr double kDefaultAlphaUsr = 0.01;
inline constexpr double kDefaultAlphaArs = 0.0001;

struct PairScoringOptions {
  QueryMode mode = QueryMode::NoK;
  /// Ranked keywords per actor name; consulted by the K1/K2/K1K2 modes.
  std::map<std::string, std::vector<std::string>> keywords;
  std::size_t snippet_cap = kDefaultSnippetCap;
  CanonicalizeOptions url_options;
};

/// Keywords used for a pair query: the ones both actors carry (in the first
/// actor's order), then the rest of the first actor's, then the second's.
std::vector<std::string> pair_keywords(std::span<const std::string> a, std::span<const std::string> b);

/// One score per unordered pair, in (i, j > i) input order. SRS scores the
/// co-occurrence Jaccard of the name phrases (the doubleton narrowed by
/// keywords in K modes); USR scores the cosine of the actors' URL vectors.
/// Throws InvalidArgument for fewer than two actors or for Method::ARS.
std::vector<PairScore> score_all_pairs(const SearchProvider& provider, std::span<const Actor> actors, Method method,
                                       const PairScoringOptions& options = {});

/// Scores above alpha (strictly, unless `strict` is false), in input order.
std::vector<PairScore> threshold_relations(std::span<const PairScore> scores, double alpha, bool strict = true);

/// actor_a,actor_b,method,score rows with a header line.
void write_scores_csv(std::ostream& out, std::span<const PairScore> scores);

}  // namespace snx
