#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace snx {

struct Document {
  std::string doc_id;
  std::string url;
  std::string title;
  std::string body;
  std::string source_tag;
};

/// One ranked search result. `doc_id` identifies the underlying document and
/// serves as the snippet's reference id during disambiguation.
struct Snippet {
  std::string query;
  std::size_t rank = 0;
  std::string doc_id;
  std::string title;
  std::string summary;
  std::string url;
};

/// Singleton and doubleton document counts for a pair of phrases.
struct HitCounts {
  std::size_t singleton_a = 0;
  std::size_t singleton_b = 0;
  std::size_t doubleton = 0;

  friend bool operator==(const HitCounts&, const HitCounts&) = default;
};

/// A conjunctive query: every phrase must occur verbatim and every bare term
/// must occur somewhere in the document.
struct Query {
  std::vector<std::vector<std::string>> phrases;
  std::vector<std::string> terms;

  bool empty() const { return phrases.empty() && terms.empty(); }
};

/// Double-quoted segments become phrases; text outside quotes is split into
/// bare terms. An unterminated quote runs to the end of the string.
Query parse_query(std::string_view text);

/// Quote `phrase` for use inside a query string.
std::string quote(std::string_view phrase);

inline constexpr std::size_t kDefaultSnippetCap = 600;
inline constexpr std::size_t kSummaryWindow = 160;

/// The hit-count/snippet contract shared by the local index and any other
/// search back end.
class SearchProvider {
public:
  virtual ~SearchProvider() = default;

  virtual std::size_t document_count() const = 0;

  /// Documents containing the phrase's tokens consecutively. Throws
  /// InvalidQuery when the phrase has no tokens.
  virtual std::size_t phrase_hits(std::string_view phrase) const = 0;

  /// Documents satisfying a conjunctive query string. Throws InvalidQuery on
  /// an empty query.
  virtual std::size_t query_hits(std::string_view query) const = 0;

  virtual HitCounts co_hits(std::string_view phrase_a, std::string_view phrase_b) const;

  virtual std::vector<Snippet> search(std::string_view query,
                                      std::size_t max_results = kDefaultSnippetCap) const = 0;

  /// phrase_hits / N. Throws UndefinedProbability on an empty collection.
  double hit_probability(std::string_view phrase) const;
};

/// Immutable document collection with an inverted index. Thread-safe for
/// concurrent reads.
class Corpus final : public SearchProvider {
public:
  using DocIndex = std::uint32_t;

  Corpus() = default;

  /// Throws DuplicateId naming the first repeated doc_id.
  static Corpus ingest(std::vector<Document> documents);

  std::size_t document_count() const override { return documents_.size(); }
  std::size_t phrase_hits(std::string_view phrase) const override;
  std::size_t query_hits(std::string_view query) const override;
  HitCounts co_hits(std::string_view phrase_a, std::string_view phrase_b) const override;
  std::vector<Snippet> search(std::string_view query,
                              std::size_t max_results = kDefaultSnippetCap) const override;

  /// Sorted indices of documents matching the query.
  std::vector<DocIndex> matching(const Query& query) const;

  std::span<const Document> documents() const { return documents_; }
  const Document& document(DocIndex index) const { return documents_[index]; }

  /// Sorted, duplicate-free document indices for a term; empty when unknown.
  std::span<const DocIndex> postings(std::string_view term) const;
  std::size_t term_count() const { return terms_.size(); }
  std::size_t token_count() const { return token_count_; }

  /// Vocabulary in ascending lexicographic order.
  std::vector<std::string> vocabulary() const;

private:
  static constexpr std::uint32_t kFieldBreak = 0xFFFFFFFFu;

  std::vector<DocIndex> phrase_docs(std::span<const std::string> phrase) const;
  bool contains_phrase(DocIndex doc, std::span<const std::uint32_t> term_ids) const;
  std::size_t term_frequency(DocIndex doc, std::uint32_t term_id) const;
  int lookup(std::string_view term) const;

  std::vector<Document> documents_;
  std::unordered_map<std::string, std::uint32_t> terms_;
  std::vector<std::vector<DocIndex>> postings_;
  // Title tokens, a field break, then body tokens, as term ids.
  std::vector<std::vector<std::uint32_t>> doc_terms_;
  std::size_t token_count_ = 0;
};

/// JSON-lines: one object per line with "id" (or "doc_id"), "url", "title",
/// "body" and an optional "source_tag". Blank lines are skipped.
std::vector<Document> read_jsonl_documents(const std::filesystem::path& path);

/// Every regular file in `dir`, in filename order. The file name without
/// extension is the doc_id, the first line is the title, the rest the body.
std::vector<Document> read_text_directory(const std::filesystem::path& dir);

struct CorpusManifest {
  std::size_t document_count = 0;
  std::size_t token_count = 0;
  std::size_t term_count = 0;
  std::string checksum;
  std::string created;
};

/// Writes the corpus (documents plus index) to `path` and returns the
/// manifest describing the written bytes.
CorpusManifest save_corpus(const Corpus& corpus, const std::filesystem::path& path);

/// Loads a saved corpus, rebuilding the index and checking it against the
/// stored one.
Corpus load_corpus(const std::filesystem::path& path);

std::string checksum_file(const std::filesystem::path& path);

}  // namespace snx
