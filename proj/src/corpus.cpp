#include "snx/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include "snx/error.hpp"
#include "snx/text.hpp"

namespace snx {
namespace {

using json = nlohmann::json;

std::vector<Corpus::DocIndex> intersect(const std::vector<Corpus::DocIndex>& a,
                                        std::span<const Corpus::DocIndex> b) {
  std::vector<Corpus::DocIndex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return fmt::format("{:016x}", hash);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

Query parse_query(std::string_view text) {
  Query query;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find('"', pos);
    const std::string_view bare = text.substr(pos, open == std::string_view::npos ? open : open - pos);
    for (auto& term : tokenize(bare)) query.terms.push_back(std::move(term));
    if (open == std::string_view::npos) break;
    const std::size_t close = text.find('"', open + 1);
    const std::string_view inner =
        text.substr(open + 1, close == std::string_view::npos ? close : close - open - 1);
    auto phrase = tokenize(inner);
    if (!phrase.empty()) query.phrases.push_back(std::move(phrase));
    if (close == std::string_view::npos) break;
    pos = close + 1;
  }
  return query;
}

std::string quote(std::string_view phrase) {
  std::string out = "\"";
  for (char c : phrase) {
    if (c != '"') out.push_back(c);
  }
  out.push_back('"');
  return out;
}

HitCounts SearchProvider::co_hits(std::string_view phrase_a, std::string_view phrase_b) const {
  HitCounts hits;
  hits.singleton_a = phrase_hits(phrase_a);
  hits.singleton_b = phrase_hits(phrase_b);
  hits.doubleton = query_hits(quote(phrase_a) + " " + quote(phrase_b));
  return hits;
}

double SearchProvider::hit_probability(std::string_view phrase) const {
  const std::size_t n = document_count();
  if (n == 0) throw Error(ErrorKind::UndefinedProbability, "hit probability over an empty collection");
  return static_cast<double>(phrase_hits(phrase)) / static_cast<double>(n);
}

Corpus Corpus::ingest(std::vector<Document> documents) {
  Corpus corpus;
  std::set<std::string_view> seen;
  for (const auto& doc : documents) {
    if (!seen.insert(doc.doc_id).second) {
      throw Error(ErrorKind::DuplicateId, fmt::format("duplicate doc_id '{}'", doc.doc_id));
    }
  }
  corpus.documents_ = std::move(documents);
  corpus.doc_terms_.reserve(corpus.documents_.size());

  auto intern = [&corpus](std::string&& word) {
    auto [it, inserted] = corpus.terms_.try_emplace(std::move(word), static_cast<std::uint32_t>(corpus.postings_.size()));
    if (inserted) corpus.postings_.emplace_back();
    return it->second;
  };

  for (DocIndex d = 0; d < corpus.documents_.size(); ++d) {
    const Document& doc = corpus.documents_[d];
    std::vector<std::uint32_t> ids;
    for (auto& word : tokenize(doc.title)) ids.push_back(intern(std::move(word)));
    ids.push_back(kFieldBreak);
    for (auto& word : tokenize(doc.body)) ids.push_back(intern(std::move(word)));
    for (std::uint32_t id : ids) {
      if (id == kFieldBreak) continue;
      ++corpus.token_count_;
      auto& list = corpus.postings_[id];
      if (list.empty() || list.back() != d) list.push_back(d);
    }
    corpus.doc_terms_.push_back(std::move(ids));
  }
  return corpus;
}

int Corpus::lookup(std::string_view term) const {
  auto it = terms_.find(std::string(term));
  return it == terms_.end() ? -1 : static_cast<int>(it->second);
}

std::span<const Corpus::DocIndex> Corpus::postings(std::string_view term) const {
  const int id = lookup(term);
  if (id < 0) return {};
  return postings_[static_cast<std::size_t>(id)];
}

std::vector<std::string> Corpus::vocabulary() const {
  std::vector<std::string> words;
  words.reserve(terms_.size());
  for (const auto& [word, id] : terms_) words.push_back(word);
  std::sort(words.begin(), words.end());
  return words;
}

bool Corpus::contains_phrase(DocIndex doc, std::span<const std::uint32_t> term_ids) const {
  const auto& tokens = doc_terms_[doc];
  if (term_ids.size() > tokens.size()) return false;
  return std::search(tokens.begin(), tokens.end(), term_ids.begin(), term_ids.end()) != tokens.end();
}

std::vector<Corpus::DocIndex> Corpus::phrase_docs(std::span<const std::string> phrase) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(phrase.size());
  for (const auto& word : phrase) {
    const int id = lookup(word);
    if (id < 0) return {};
    ids.push_back(static_cast<std::uint32_t>(id));
  }
  std::vector<std::uint32_t> by_rarity = ids;
  std::sort(by_rarity.begin(), by_rarity.end(),
            [this](std::uint32_t a, std::uint32_t b) { return postings_[a].size() < postings_[b].size(); });
  by_rarity.erase(std::unique(by_rarity.begin(), by_rarity.end()), by_rarity.end());

  std::vector<DocIndex> candidates = postings_[by_rarity.front()];
  for (std::size_t i = 1; i < by_rarity.size() && !candidates.empty(); ++i) {
    candidates = intersect(candidates, postings_[by_rarity[i]]);
  }
  if (ids.size() == 1) return candidates;
  std::vector<DocIndex> out;
  for (DocIndex d : candidates) {
    if (contains_phrase(d, ids)) out.push_back(d);
  }
  return out;
}

std::vector<Corpus::DocIndex> Corpus::matching(const Query& query) const {
  if (query.empty()) throw Error(ErrorKind::InvalidQuery, "query has no tokens");
  std::vector<std::vector<DocIndex>> lists;
  for (const auto& phrase : query.phrases) lists.push_back(phrase_docs(phrase));
  for (const auto& term : query.terms) {
    auto list = postings(term);
    lists.emplace_back(list.begin(), list.end());
  }
  std::sort(lists.begin(), lists.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<DocIndex> result = std::move(lists.front());
  for (std::size_t i = 1; i < lists.size() && !result.empty(); ++i) result = intersect(result, lists[i]);
  return result;
}

std::size_t Corpus::phrase_hits(std::string_view phrase) const {
  const auto tokens = tokenize(phrase);
  if (tokens.empty()) {
    throw Error(ErrorKind::InvalidQuery, fmt::format("phrase '{}' has no tokens", phrase));
  }
  return phrase_docs(tokens).size();
}

std::size_t Corpus::query_hits(std::string_view query) const {
  const Query parsed = parse_query(query);
  if (parsed.empty()) throw Error(ErrorKind::InvalidQuery, fmt::format("query '{}' has no tokens", query));
  return matching(parsed).size();
}

HitCounts Corpus::co_hits(std::string_view phrase_a, std::string_view phrase_b) const {
  const auto a = tokenize(phrase_a);
  const auto b = tokenize(phrase_b);
  if (a.empty() || b.empty()) {
    throw Error(ErrorKind::InvalidQuery,
                fmt::format("phrase '{}' has no tokens", a.empty() ? phrase_a : phrase_b));
  }
  const auto docs_a = phrase_docs(a);
  const auto docs_b = phrase_docs(b);
  return HitCounts{docs_a.size(), docs_b.size(), intersect(docs_a, docs_b).size()};
}

std::size_t Corpus::term_frequency(DocIndex doc, std::uint32_t term_id) const {
  const auto& tokens = doc_terms_[doc];
  return static_cast<std::size_t>(std::count(tokens.begin(), tokens.end(), term_id));
}

std::vector<Snippet> Corpus::search(std::string_view query, std::size_t max_results) const {
  if (max_results == 0) throw Error(ErrorKind::InvalidArgument, "max_results must be at least 1");
  const Query parsed = parse_query(query);
  if (parsed.empty()) return {};

  std::vector<std::uint32_t> query_ids;
  for (const auto& phrase : parsed.phrases) {
    for (const auto& w : phrase) query_ids.push_back(static_cast<std::uint32_t>(std::max(lookup(w), 0)));
  }
  for (const auto& w : parsed.terms) query_ids.push_back(static_cast<std::uint32_t>(std::max(lookup(w), 0)));

  struct Scored {
    DocIndex doc;
    std::size_t score;
  };
  std::vector<Scored> scored;
  for (DocIndex d : matching(parsed)) {
    std::size_t score = 0;
    for (std::uint32_t id : query_ids) score += term_frequency(d, id);
    scored.push_back({d, score});
  }
  std::sort(scored.begin(), scored.end(), [this](const Scored& x, const Scored& y) {
    if (x.score != y.score) return x.score > y.score;
    return documents_[x.doc].doc_id < documents_[y.doc].doc_id;
  });
  if (scored.size() > max_results) scored.resize(max_results);

  // First token of any query component, used to centre the summary window.
  std::set<std::string> anchors;
  for (const auto& phrase : parsed.phrases) anchors.insert(phrase.front());
  for (const auto& w : parsed.terms) anchors.insert(w);

  std::vector<Snippet> out;
  out.reserve(scored.size());
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const Document& doc = documents_[scored[i].doc];
    std::size_t match_char = 0;
    for (const auto& token : tokenize_with_offsets(doc.body)) {
      if (anchors.count(token.text) != 0) {
        match_char = utf8_char_index(doc.body, token.begin);
        break;
      }
    }
    const std::size_t length = utf8_length(doc.body);
    std::size_t start = match_char > kSummaryWindow / 2 ? match_char - kSummaryWindow / 2 : 0;
    if (start + kSummaryWindow > length) start = length > kSummaryWindow ? length - kSummaryWindow : 0;
    out.push_back(Snippet{std::string(query), i + 1, doc.doc_id, doc.title,
                          utf8_substr(doc.body, start, kSummaryWindow), doc.url});
  }
  return out;
}

std::vector<Document> read_jsonl_documents(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open {}", path.string()));
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json obj = json::parse(line);
      Document doc;
      doc.doc_id = obj.contains("id") ? obj.at("id").get<std::string>() : obj.at("doc_id").get<std::string>();
      doc.url = obj.value("url", "");
      doc.title = obj.value("title", "");
      doc.body = obj.value("body", "");
      doc.source_tag = obj.value("source_tag", "jsonl");
      docs.push_back(std::move(doc));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Parse, fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
  }
  return docs;
}

std::vector<Document> read_text_directory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::Io, fmt::format("{} is not a directory", dir.string()));
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Document> docs;
  for (const auto& file : files) {
    const std::string content = read_file(file);
    const std::size_t newline = content.find('\n');
    Document doc;
    doc.doc_id = file.stem().string();
    doc.title = content.substr(0, newline);
    if (!doc.title.empty() && doc.title.back() == '\r') doc.title.pop_back();
    doc.body = newline == std::string::npos ? std::string() : content.substr(newline + 1);
    doc.url = "file://localhost/" + file.filename().string();
    doc.source_tag = "text";
    docs.push_back(std::move(doc));
  }
  return docs;
}

namespace {

json corpus_to_json(const Corpus& corpus) {
  json docs = json::array();
  for (const auto& doc : corpus.documents()) {
    docs.push_back({{"id", doc.doc_id},
                    {"url", doc.url},
                    {"title", doc.title},
                    {"body", doc.body},
                    {"source_tag", doc.source_tag}});
  }
  json index = json::object();
  for (const auto& term : corpus.vocabulary()) {
    json list = json::array();
    for (auto d : corpus.postings(term)) list.push_back(corpus.document(d).doc_id);
    index[term] = std::move(list);
  }
  return json{{"format", "snx-corpus"}, {"version", 1}, {"documents", std::move(docs)}, {"index", std::move(index)}};
}

}  // namespace

std::string checksum_file(const std::filesystem::path& path) { return fnv1a_hex(read_file(path)); }

CorpusManifest save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  const std::string bytes = corpus_to_json(corpus).dump() + "\n";
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write {}", path.string()));
    out << bytes;
  }
  CorpusManifest manifest;
  manifest.document_count = corpus.document_count();
  manifest.token_count = corpus.token_count();
  manifest.term_count = corpus.term_count();
  manifest.checksum = fnv1a_hex(bytes);
  manifest.created = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(
                                                               std::chrono::system_clock::now())));
  return manifest;
}

Corpus load_corpus(const std::filesystem::path& path) {
  json root;
  try {
    root = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, fmt::format("{}: {}", path.string(), e.what()));
  }
  if (root.value("format", "") != "snx-corpus") {
    throw Error(ErrorKind::Parse, fmt::format("{}: not a corpus file", path.string()));
  }
  std::vector<Document> docs;
  try {
    for (const auto& obj : root.at("documents")) {
      docs.push_back(Document{obj.at("id").get<std::string>(), obj.value("url", ""), obj.value("title", ""),
                              obj.value("body", ""), obj.value("source_tag", "")});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, fmt::format("{}: {}", path.string(), e.what()));
  }
  Corpus corpus = Corpus::ingest(std::move(docs));
  if (root.contains("index") && root.at("index") != corpus_to_json(corpus).at("index")) {
    throw Error(ErrorKind::Parse, fmt::format("{}: stored index does not match documents", path.string()));
  }
  return corpus;
}

}  // namespace snx
