#include "snx/cooccur.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "snx/error.hpp"

namespace snx {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

double jaccard_similarity(const HitCounts& hits) {
  if (hits.doubleton > hits.singleton_a || hits.doubleton > hits.singleton_b) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("doubleton {} exceeds a singleton ({}, {})", hits.doubleton, hits.singleton_a, hits.singleton_b));
  }
  if (hits.singleton_a == 0 && hits.singleton_b == 0) {
    throw Error(ErrorKind::UndefinedSimilarity, "both singleton counts are zero");
  }
  return static_cast<double>(hits.doubleton) /
         static_cast<double>(hits.singleton_a + hits.singleton_b - hits.doubleton);
}

std::vector<std::string> pair_keywords(std::span<const std::string> a, std::span<const std::string> b) {
  const std::set<std::string> in_b(b.begin(), b.end());
  std::vector<std::string> out;
  std::set<std::string> used;
  for (const auto& w : a) {
    if (in_b.count(w) && used.insert(w).second) out.push_back(w);
  }
  for (const auto& w : a) {
    if (used.insert(w).second) out.push_back(w);
  }
  for (const auto& w : b) {
    if (used.insert(w).second) out.push_back(w);
  }
  return out;
}

std::vector<PairScore> score_all_pairs(const SearchProvider& provider, std::span<const Actor> actors, Method method,
                                       const PairScoringOptions& options) {
  if (actors.size() < 2) throw Error(ErrorKind::InvalidArgument, "pair scoring needs at least two actors");
  if (method != Method::SRS && method != Method::USR) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("pair scoring does not support method {}", to_string(method)));
  }
  const std::size_t n = actors.size();
  std::vector<PairScore> scores;
  scores.reserve(n * (n - 1) / 2);

  if (method == Method::USR) {
    std::vector<UrlVector> vectors;
    vectors.reserve(n);
    for (const auto& actor : actors) {
      const auto snippets = provider.search(quote(actor.name), options.snippet_cap);
      vectors.push_back(build_url_vector(actor.name, snippets, options.url_options));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        scores.push_back({actors[i].name, actors[j].name, url_distance(vectors[i], vectors[j]), Method::USR});
      }
    }
    return scores;
  }

  std::vector<std::size_t> singletons(n);
  for (std::size_t i = 0; i < n; ++i) singletons[i] = provider.phrase_hits(actors[i].name);
  static const std::vector<std::string> kNone;
  auto keywords_of = [&options](const std::string& name) -> const std::vector<std::string>& {
    auto it = options.keywords.find(name);
    return it == options.keywords.end() ? kNone : it->second;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      PairScore score{actors[i].name, actors[j].name, 0.0, Method::SRS};
      std::string query;
      if (options.mode == QueryMode::NoK) {
        query = build_query(actors[i].name, actors[j].name, {}, QueryMode::NoK);
      } else {
        const auto words = pair_keywords(keywords_of(actors[i].name), keywords_of(actors[j].name));
        try {
          query = build_query(actors[i].name, actors[j].name, words, options.mode);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::MissingKeyword) throw;
          query = build_query(actors[i].name, actors[j].name, {}, QueryMode::NoK);
          score.keyword_fallback = true;
        }
      }
      const HitCounts hits{singletons[i], singletons[j], provider.query_hits(query)};
      try {
        score.score = jaccard_similarity(hits);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UndefinedSimilarity) throw;
        score.undefined = true;
      }
      scores.push_back(std::move(score));
    }
  }
  return scores;
}

std::vector<PairScore> threshold_relations(std::span<const PairScore> scores, double alpha, bool strict) {
  std::vector<PairScore> kept;
  for (const auto& s : scores) {
    if (strict ? s.score > alpha : s.score >= alpha) kept.push_back(s);
  }
  return kept;
}

void write_scores_csv(std::ostream& out, std::span<const PairScore> scores) {
  out << "actor_a,actor_b,method,score\n";
  for (const auto& s : scores) {
    out << csv_field(s.actor_a) << ',' << csv_field(s.actor_b) << ',' << to_string(s.method) << ','
        << fmt::format("{}", s.score) << '\n';
  }
}

}  // namespace snx
