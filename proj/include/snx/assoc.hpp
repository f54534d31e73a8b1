#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "snx/cooccur.hpp"
#include "snx/corpus.hpp"
#include "snx/keywords.hpp"
#include "snx/network.hpp"

namespace snx {

struct BiblioRecord {
  std::string record_id;
  std::string title;
  std::vector<std::string> authors;
  std::string venue;
  int year = 0;
};

/// Throws Parse (with the record id) when there is no author or an author
/// repeats.
void validate_record(const BiblioRecord& record);

/// JSON-lines: {"id", "title", "authors": [...], "venue", "year"}.
std::vector<BiblioRecord> read_biblio_jsonl(const std::filesystem::path& path);

/// A small BibTeX subset: @type{key, field = {value} | "value" | number, ...}.
/// Authors are split on " and "; venue is journal, booktitle or publisher.
std::vector<BiblioRecord> read_bibtex(std::istream& in);
std::vector<BiblioRecord> read_bibtex(const std::filesystem::path& path);

/// .bib -> BibTeX, anything else -> JSON-lines.
std::vector<BiblioRecord> read_biblio(const std::filesystem::path& path);

/// One implication q => b: q is the seed name plus an optional keyword, b a
/// co-author of a record matching q.
struct Transaction {
  std::string seed;
  std::string keyword;
  std::string consequent;
  std::string record_id;
  bool truth = true;
};

/// Counts behind the rule q => b.
struct RuleStats {
  std::size_t total_m = 0;  ///< records matching q
  std::size_t support = 0;  ///< of those, records that also list b
  std::size_t db_size = 0;  ///< records anywhere that list b
};

/// A record matches q when the seed is among its authors (normalized name
/// match) and, for a non-empty keyword, the keyword phrase occurs in the
/// title or venue.
bool matches_seed(const BiblioRecord& record, std::string_view seed, std::string_view keyword);

/// One transaction per (matching record, co-author other than the seed), in
/// record order. Throws InvalidArgument for an empty seed.
std::vector<Transaction> build_transactions(std::span<const BiblioRecord> records, std::string_view seed,
                                            std::string_view keyword);

RuleStats rule_stats(std::span<const BiblioRecord> records, std::string_view seed, std::string_view keyword,
                     std::string_view consequent);

/// support / total_m. Throws UndefinedProbability when total_m is 0.
double conditional_probability(const RuleStats& stats);

/// support / (total_m + db_size - support). Throws UndefinedSimilarity on a
/// zero denominator.
double modified_jaccard(const RuleStats& stats);

struct ArsScore {
  PairScore pair;
  double conditional_probability = 0.0;
};

/// Scores every (seed, co-author) rule. A pair reached from both ends keeps
/// the higher score. Output follows discovery order.
std::vector<ArsScore> ars_pair_scores(std::span<const BiblioRecord> records, std::span<const Actor> seeds,
                                      std::string_view keyword);

/// Nodes are the seeds followed by discovered co-authors; edges are the rules
/// scoring above alpha, weighted by the modified Jaccard and carrying the
/// conditional probability.
SocialNetwork extract_ars_network(std::span<const BiblioRecord> records, std::span<const Actor> seeds,
                                  std::string_view keyword, double alpha = kDefaultAlphaArs, bool strict = true);

struct RankedLabel {
  std::string word;
  double tfidf = 0.0;
  double normalized = 0.0;
};

/// normalized = tfidf * N / root_degree, ranked descending (ties by word).
/// Throws InvalidDegree when root_degree is 0.
std::vector<RankedLabel> rank_normalized_tfidf(std::vector<RankedLabel> labels, std::size_t n,
                                               std::size_t root_degree);

/// Label candidates for the tree rooted at the transactions' seed. The
/// documents mentioning the seed or any consequent form the view; each word
/// in it is scored by TF.IDF over the view and normalized by N / root_degree.
/// Throws InvalidDegree when root_degree is 0 and InvalidArgument when the
/// transactions name more than one seed.
std::vector<RankedLabel> label_tree_keywords(std::span<const Transaction> transactions, const Corpus& corpus,
                                             std::size_t root_degree, LogBase base = LogBase::Natural);

}  // namespace snx
