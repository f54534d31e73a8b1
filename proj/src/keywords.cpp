#include "snx/keywords.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "snx/error.hpp"
#include "snx/text.hpp"

namespace snx {

LogBase parse_log_base(std::string_view text) {
  if (text == "e" || text == "ln" || text == "natural") return LogBase::Natural;
  if (text == "2") return LogBase::Two;
  if (text == "10") return LogBase::Ten;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown log base '{}' (expected e, 2 or 10)", text));
}

namespace {

double log_in(double x, LogBase base) {
  switch (base) {
    case LogBase::Natural: return std::log(x);
    case LogBase::Two: return std::log2(x);
    case LogBase::Ten: return std::log10(x);
  }
  return std::log(x);
}

bool by_tfidf_then_word(const KeywordCandidate& a, const KeywordCandidate& b) {
  if (a.tfidf != b.tfidf) return a.tfidf > b.tfidf;
  return a.word < b.word;
}

}  // namespace

double tfidf(std::span<const std::vector<std::string>> documents, std::string_view word, LogBase base) {
  if (documents.empty()) throw Error(ErrorKind::InvalidArgument, "tfidf over an empty document view");
  double tf = 0.0;
  std::size_t df = 0;
  for (const auto& doc : documents) {
    const auto occurrences = std::count(doc.begin(), doc.end(), word);
    if (occurrences == 0) continue;
    ++df;
    tf += static_cast<double>(occurrences) / static_cast<double>(doc.size());
  }
  if (df == 0) return 0.0;
  return tf * log_in(static_cast<double>(documents.size()) / static_cast<double>(df), base);
}

std::vector<KeywordCandidate> select_keywords(std::vector<KeywordCandidate> candidates, double ratio,
                                              std::size_t cap) {
  if (candidates.empty()) return candidates;
  std::sort(candidates.begin(), candidates.end(), by_tfidf_then_word);
  const double cutoff = ratio * candidates.front().tfidf;
  std::erase_if(candidates, [cutoff](const KeywordCandidate& c) { return !(c.tfidf > cutoff); });
  if (candidates.size() > cap) candidates.resize(cap);
  return candidates;
}

std::vector<KeywordCandidate> delta_rank(std::vector<KeywordCandidate> candidates, bool ascending) {
  double max_tfidf = 0.0;
  double max_hits = 0.0;
  for (const auto& c : candidates) {
    max_tfidf = std::max(max_tfidf, c.tfidf);
    max_hits = std::max(max_hits, c.hit_fraction);
  }
  for (auto& c : candidates) {
    const double nu = max_tfidf > 0.0 ? c.tfidf / max_tfidf : c.tfidf;
    const double upsilon = max_hits > 0.0 ? c.hit_fraction / max_hits : c.hit_fraction;
    c.delta = std::abs(nu - upsilon);
  }
  std::sort(candidates.begin(), candidates.end(), [ascending](const KeywordCandidate& a, const KeywordCandidate& b) {
    if (a.delta != b.delta) return ascending ? a.delta < b.delta : a.delta > b.delta;
    return a.word < b.word;
  });
  return candidates;
}

KeywordReport actor_keywords(const SearchProvider& provider, std::string_view actor, const KeywordOptions& options) {
  KeywordReport report;
  report.actor = std::string(actor);
  const std::size_t n = provider.document_count();
  if (n == 0 || tokenize(actor).empty()) return report;

  const auto snippets = provider.search(quote(actor), options.snippet_cap);
  report.snippet_count = snippets.size();
  if (snippets.empty()) return report;

  std::vector<std::vector<std::string>> view;
  view.reserve(snippets.size());
  std::set<std::string> vocabulary;
  for (const auto& s : snippets) {
    auto tokens = tokenize(s.title + "\n" + s.summary);
    if (tokens.empty()) continue;
    vocabulary.insert(tokens.begin(), tokens.end());
    view.push_back(std::move(tokens));
  }
  if (view.empty()) return report;
  for (const auto& name_token : tokenize(actor)) vocabulary.erase(name_token);

  std::vector<KeywordCandidate> candidates;
  for (const auto& word : vocabulary) {
    if (utf8_length(word) < 2) continue;
    if (options.drop_stopwords && is_stopword(word)) continue;
    candidates.push_back({word, tfidf(view, word, options.log_base), 0.0, 0.0});
  }
  auto selected = select_keywords(std::move(candidates), options.cutoff_ratio, options.cap);
  for (auto& c : selected) {
    const std::size_t hits = provider.query_hits(quote(actor) + " " + c.word);
    c.hit_fraction = static_cast<double>(hits) / static_cast<double>(n);
  }
  report.ranked = delta_rank(std::move(selected), options.delta_ascending);
  return report;
}

QueryMode parse_query_mode(std::string_view text) {
  const std::string lowered = fold_case(text);
  if (lowered == "nok") return QueryMode::NoK;
  if (lowered == "k1") return QueryMode::K1;
  if (lowered == "k2") return QueryMode::K2;
  if (lowered == "k1k2" || lowered == "k1+k2") return QueryMode::K1K2;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown query mode '{}'", text));
}

std::string_view to_string(QueryMode mode) {
  switch (mode) {
    case QueryMode::NoK: return "noK";
    case QueryMode::K1: return "K1";
    case QueryMode::K2: return "K2";
    case QueryMode::K1K2: return "K1K2";
  }
  return "noK";
}

std::string build_query(std::string_view actor_a, std::string_view actor_b, std::span<const std::string> keywords,
                        QueryMode mode) {
  const std::size_t needed = mode == QueryMode::NoK ? 0 : mode == QueryMode::K1 ? 1 : 2;
  if (keywords.size() < needed) {
    throw Error(ErrorKind::MissingKeyword, fmt::format("query mode {} needs {} keyword(s), got {}", to_string(mode),
                                                       needed, keywords.size()));
  }
  std::string query = quote(actor_a) + " " + quote(actor_b);
  switch (mode) {
    case QueryMode::NoK: break;
    case QueryMode::K1: query += " " + keywords[0]; break;
    case QueryMode::K2: query += " " + keywords[1]; break;
    case QueryMode::K1K2: query += " " + keywords[0] + " " + keywords[1]; break;
  }
  return query;
}

ReferencePartition::ReferencePartition(std::vector<std::vector<std::string>> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].empty()) throw Error(ErrorKind::InvalidArgument, fmt::format("block {} is empty", b));
    for (const auto& ref : blocks_[b]) {
      references_.push_back(ref);
      lookup_.emplace_back(ref, b);
    }
  }
  std::sort(lookup_.begin(), lookup_.end());
  for (std::size_t i = 1; i < lookup_.size(); ++i) {
    if (lookup_[i].first == lookup_[i - 1].first) {
      throw Error(ErrorKind::InvalidArgument, fmt::format("reference '{}' appears in more than one place", lookup_[i].first));
    }
  }
}

bool ReferencePartition::contains(std::string_view ref) const {
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), ref,
                             [](const auto& entry, std::string_view key) { return entry.first < key; });
  return it != lookup_.end() && it->first == ref;
}

std::size_t ReferencePartition::block_of(std::string_view ref) const {
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), ref,
                             [](const auto& entry, std::string_view key) { return entry.first < key; });
  if (it == lookup_.end() || it->first != ref) {
    throw Error(ErrorKind::UnknownReference, fmt::format("unknown reference '{}'", ref));
  }
  return it->second;
}

namespace {

// |{S in A-block(ref) : B-block(S) = B-block(ref)}| / |A-block(ref)|
double agreement(std::string_view ref, const ReferencePartition& a, const ReferencePartition& b) {
  const auto& block = a.blocks()[a.block_of(ref)];
  const std::size_t target = b.block_of(ref);
  std::size_t same = 0;
  for (const auto& s : block) {
    if (b.contains(s) && b.block_of(s) == target) ++same;
  }
  return static_cast<double>(same) / static_cast<double>(block.size());
}

}  // namespace

double reference_recall(std::string_view ref, const ReferencePartition& truth, const Clustering& sys) {
  return agreement(ref, truth, sys);
}

double reference_precision(std::string_view ref, const ReferencePartition& truth, const Clustering& sys) {
  return agreement(ref, sys, truth);
}

double f_measure(double recall, double precision) {
  if (recall + precision == 0.0) return 0.0;
  return 2.0 * recall * precision / (recall + precision);
}

ClusteringScores clustering_scores(const ReferencePartition& truth, const Clustering& sys) {
  const auto& refs = truth.references();
  if (refs.size() != sys.references().size()) {
    throw Error(ErrorKind::UnknownReference,
                fmt::format("reference universes differ ({} vs {} references)", refs.size(), sys.references().size()));
  }
  for (const auto& ref : refs) {
    if (!sys.contains(ref)) throw Error(ErrorKind::UnknownReference, fmt::format("reference '{}' missing from clustering", ref));
  }
  ClusteringScores scores;
  if (refs.empty()) return scores;
  for (const auto& ref : refs) {
    scores.recall += reference_recall(ref, truth, sys);
    scores.precision += reference_precision(ref, truth, sys);
  }
  scores.recall /= static_cast<double>(refs.size());
  scores.precision /= static_cast<double>(refs.size());
  scores.f = f_measure(scores.recall, scores.precision);
  return scores;
}

Clustering cluster_references(std::span<const Snippet> snippets, std::span<const std::string> keywords,
                              const CanonicalizeOptions& url_options) {
  const std::size_t n = snippets.size();
  const std::set<std::string> keyword_set(keywords.begin(), keywords.end());
  std::vector<std::string> hosts(n);
  std::vector<std::set<std::string>> found(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      const auto url = canonicalize(snippets[i].url, url_options);
      hosts[i] = hierarchy_prefixes(url).front();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MalformedUrl) throw;
      hosts[i] = fmt::format("\x01{}", i);  // unique: never joins another snippet by host
    }
    for (auto& token : tokenize(snippets[i].title + "\n" + snippets[i].summary)) {
      if (keyword_set.count(token)) found[i].insert(std::move(token));
    }
  }

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (hosts[i] != hosts[j]) continue;
      const bool overlap = std::any_of(found[i].begin(), found[i].end(),
                                       [&](const std::string& w) { return found[j].count(w) != 0; });
      if (overlap) parent[root(j)] = root(i);
    }
  }

  std::vector<std::vector<std::string>> blocks;
  std::map<std::size_t, std::size_t> block_of_root;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = block_of_root.try_emplace(root(i), blocks.size());
    if (inserted) blocks.emplace_back();
    blocks[it->second].push_back(snippets[i].doc_id);
  }
  return Clustering(std::move(blocks));
}

std::string partition_to_json(const ReferencePartition& partition) {
  return nlohmann::json(partition.blocks()).dump();
}

ReferencePartition partition_from_json(std::string_view text) {
  try {
    return ReferencePartition(nlohmann::json::parse(text).get<std::vector<std::vector<std::string>>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, fmt::format("partition JSON: {}", e.what()));
  }
}

}  // namespace snx
