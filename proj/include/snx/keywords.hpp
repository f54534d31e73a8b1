#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "snx/corpus.hpp"
#include "snx/url.hpp"

namespace snx {

enum class LogBase { Natural, Two, Ten };

LogBase parse_log_base(std::string_view text);

/// TF.IDF of `word` over a document view (each document a token list):
///   tf  = sum over documents of (occurrences of word) / (document length)
///   idf = log(N / df)
/// Returns 0 when the word occurs in no document. Throws InvalidArgument on
/// an empty view.
double tfidf(std::span<const std::vector<std::string>> documents, std::string_view word,
             LogBase base = LogBase::Natural);

struct KeywordCandidate {
  std::string word;
  double tfidf = 0.0;
  /// Documents containing both the actor name and the word, over N.
  double hit_fraction = 0.0;
  double delta = 0.0;
};

inline constexpr double kKeywordCutoffRatio = 0.3;
inline constexpr std::size_t kKeywordCap = 30;

/// Keeps candidates with tfidf > ratio * max tfidf, at most `cap` of them,
/// ordered by descending tfidf then word.
std::vector<KeywordCandidate> select_keywords(std::vector<KeywordCandidate> candidates,
                                              double ratio = kKeywordCutoffRatio, std::size_t cap = kKeywordCap);

/// Scales tfidf and hit_fraction each by its own maximum (when positive),
/// sets delta = |scaled tfidf - scaled hit_fraction| and sorts by delta,
/// ascending by default. Ties go to the lexicographically smaller word.
std::vector<KeywordCandidate> delta_rank(std::vector<KeywordCandidate> candidates, bool ascending = true);

struct KeywordOptions {
  double cutoff_ratio = kKeywordCutoffRatio;
  std::size_t cap = kKeywordCap;
  std::size_t snippet_cap = kDefaultSnippetCap;
  LogBase log_base = LogBase::Natural;
  bool delta_ascending = true;
  bool drop_stopwords = true;
};

struct KeywordReport {
  std::string actor;
  std::size_t snippet_count = 0;
  /// Selected keywords in delta order.
  std::vector<KeywordCandidate> ranked;
};

/// Searches the actor's quoted name, treats each snippet (title + summary)
/// as a document, scores every candidate word, selects by tfidf and ranks
/// by delta. Name tokens, one-character tokens and (optionally) stopwords
/// are not candidates.
KeywordReport actor_keywords(const SearchProvider& provider, std::string_view actor,
                             const KeywordOptions& options = {});

enum class QueryMode { NoK, K1, K2, K1K2 };

QueryMode parse_query_mode(std::string_view text);
std::string_view to_string(QueryMode mode);

/// noK: the quoted name pair; K1/K2 add the first/second keyword; K1K2 adds
/// both. Throws MissingKeyword when too few keywords are supplied.
std::string build_query(std::string_view actor_a, std::string_view actor_b,
                        std::span<const std::string> keywords, QueryMode mode);

/// Disjoint blocks of reference ids. Used both for the true partition of
/// references into persons and for a system clustering.
class ReferencePartition {
public:
  ReferencePartition() = default;
  /// Throws InvalidArgument when a reference appears twice or a block is
  /// empty.
  explicit ReferencePartition(std::vector<std::vector<std::string>> blocks);

  const std::vector<std::vector<std::string>>& blocks() const { return blocks_; }
  /// Every reference, in block order.
  const std::vector<std::string>& references() const { return references_; }
  bool contains(std::string_view ref) const;
  /// Block index of `ref`; throws UnknownReference.
  std::size_t block_of(std::string_view ref) const;

private:
  std::vector<std::vector<std::string>> blocks_;
  std::vector<std::string> references_;
  std::vector<std::pair<std::string, std::size_t>> lookup_;
};

using Clustering = ReferencePartition;

/// Share of ref's true block that the system put in ref's cluster.
double reference_recall(std::string_view ref, const ReferencePartition& truth, const Clustering& sys);
/// Share of ref's system cluster that truly co-refers with ref.
double reference_precision(std::string_view ref, const ReferencePartition& truth, const Clustering& sys);

struct ClusteringScores {
  double recall = 0.0;
  double precision = 0.0;
  double f = 0.0;
};

/// Harmonic mean; 0 when both inputs are 0.
double f_measure(double recall, double precision);

/// Mean per-reference recall and precision plus their F. Throws
/// UnknownReference when the two structures cover different references.
ClusteringScores clustering_scores(const ReferencePartition& truth, const Clustering& sys);

/// Groups snippets that share a host and at least one of the keywords found
/// in their title or summary. Snippets are identified by doc_id; clusters
/// come out ordered by their first member.
Clustering cluster_references(std::span<const Snippet> snippets, std::span<const std::string> keywords,
                              const CanonicalizeOptions& url_options = {});

std::string partition_to_json(const ReferencePartition& partition);
/// Accepts a JSON array of string arrays.
ReferencePartition partition_from_json(std::string_view text);

}  // namespace snx
