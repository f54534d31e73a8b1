#include "snx/assoc.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "snx/error.hpp"
#include "snx/text.hpp"

namespace snx {

void validate_record(const BiblioRecord& record) {
  if (record.authors.empty()) throw Error(ErrorKind::Parse, fmt::format("record '{}': no authors", record.record_id));
  std::set<std::string> seen;
  for (const auto& author : record.authors) {
    const std::string key = normalize_name(author);
    if (key.empty()) throw Error(ErrorKind::Parse, fmt::format("record '{}': empty author name", record.record_id));
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::Parse, fmt::format("record '{}': author '{}' listed twice", record.record_id, author));
    }
  }
}

std::vector<BiblioRecord> read_biblio_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open {}", path.string()));
  std::vector<BiblioRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    BiblioRecord record;
    try {
      const auto obj = nlohmann::json::parse(line);
      record.record_id = obj.at("id").get<std::string>();
      record.title = obj.value("title", "");
      record.authors = obj.at("authors").get<std::vector<std::string>>();
      record.venue = obj.value("venue", "");
      record.year = obj.value("year", 0);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
    validate_record(record);
    records.push_back(std::move(record));
  }
  return records;
}

namespace {

class BibParser {
public:
  explicit BibParser(std::string text) : text_(std::move(text)) {}

  std::vector<BiblioRecord> parse() {
    std::vector<BiblioRecord> records;
    while (true) {
      pos_ = text_.find('@', pos_);
      if (pos_ == std::string::npos) break;
      ++pos_;
      const std::string type = fold_case(identifier());
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '{' && text_[pos_] != '(')) fail("expected '{' after entry type");
      const char close = text_[pos_] == '{' ? '}' : ')';
      ++pos_;
      if (type == "comment" || type == "preamble" || type == "string") {
        skip_balanced(close);
        continue;
      }
      records.push_back(entry(close));
    }
    return records;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    const auto line = std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(std::min(pos_, text_.size())), '\n') + 1;
    throw Error(ErrorKind::Parse, fmt::format("BibTeX line {}: {}{}", line, what,
                                              current_key_.empty() ? "" : fmt::format(" (entry '{}')", current_key_)));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '{' || c == '(' || c == ',' || c == '=' || c == '}' || c == ')' || c == '#') break;
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  void skip_balanced(char close) {
    int depth = 1;
    while (pos_ < text_.size() && depth > 0) {
      const char c = text_[pos_++];
      if (c == '{' || (close == ')' && c == '(')) ++depth;
      if (c == '}' || (close == ')' && c == ')')) --depth;
    }
    if (depth != 0) fail("unterminated entry");
  }

  std::string braced() {
    // pos_ is just past '{'
    int depth = 1;
    std::string out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_++];
      if (c == '{') {
        ++depth;
        continue;
      }
      if (c == '}') {
        if (--depth == 0) return out;
        continue;
      }
      out.push_back(c);
    }
    fail("unterminated braced value");
  }

  std::string quoted() {
    int depth = 0;
    std::string out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_++];
      if (c == '{') ++depth;
      else if (c == '}') --depth;
      else if (c == '"' && depth == 0) return out;
      else out.push_back(c);
    }
    fail("unterminated quoted value");
  }

  std::string value() {
    std::string out;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) fail("missing field value");
      if (text_[pos_] == '{') {
        ++pos_;
        out += braced();
      } else if (text_[pos_] == '"') {
        ++pos_;
        out += quoted();
      } else {
        const std::string word = identifier();
        if (word.empty()) fail("missing field value");
        out += word;
      }
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '#') {
        ++pos_;
        continue;
      }
      return out;
    }
  }

  static std::string collapse(const std::string& s) {
    std::string out;
    bool space = false;
    for (char c : s) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        space = !out.empty();
        continue;
      }
      if (space) out.push_back(' ');
      space = false;
      out.push_back(c);
    }
    return out;
  }

  BiblioRecord entry(char close) {
    BiblioRecord record;
    skip_ws();
    const std::size_t comma = text_.find(',', pos_);
    if (comma == std::string::npos) fail("entry without fields");
    record.record_id = collapse(text_.substr(pos_, comma - pos_));
    current_key_ = record.record_id;
    pos_ = comma + 1;
    std::map<std::string, std::string> fields;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated entry");
      if (text_[pos_] == close) {
        ++pos_;
        break;
      }
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      const std::string name = fold_case(identifier());
      if (name.empty()) fail("expected a field name");
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '=') fail(fmt::format("expected '=' after field '{}'", name));
      ++pos_;
      fields[name] = collapse(value());
    }
    record.title = fields["title"];
    record.venue = !fields["journal"].empty() ? fields["journal"]
                   : !fields["booktitle"].empty() ? fields["booktitle"]
                                                  : fields["publisher"];
    if (!fields["year"].empty()) {
      try {
        record.year = std::stoi(fields["year"]);
      } catch (const std::exception&) {
        fail(fmt::format("bad year '{}'", fields["year"]));
      }
    }
    const std::string& authors = fields["author"];
    std::size_t start = 0;
    while (start <= authors.size()) {
      const std::size_t next = authors.find(" and ", start);
      std::string name = collapse(authors.substr(start, next == std::string::npos ? std::string::npos : next - start));
      if (!name.empty()) record.authors.push_back(std::move(name));
      if (next == std::string::npos) break;
      start = next + 5;
    }
    validate_record(record);
    current_key_.clear();
    return record;
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::string current_key_;
};

}  // namespace

std::vector<BiblioRecord> read_bibtex(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return BibParser(buffer.str()).parse();
}

std::vector<BiblioRecord> read_bibtex(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open {}", path.string()));
  try {
    return read_bibtex(in);
  } catch (const Error& e) {
    throw Error(e.kind(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::vector<BiblioRecord> read_biblio(const std::filesystem::path& path) {
  if (fold_case(path.extension().string()) == ".bib") return read_bibtex(path);
  return read_biblio_jsonl(path);
}

namespace {

bool has_author(const BiblioRecord& record, const std::string& normalized) {
  return std::any_of(record.authors.begin(), record.authors.end(),
                     [&](const std::string& a) { return normalize_name(a) == normalized; });
}

bool contains_phrase(const std::vector<std::string>& tokens, const std::vector<std::string>& phrase) {
  return std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end()) != tokens.end();
}

}  // namespace

bool matches_seed(const BiblioRecord& record, std::string_view seed, std::string_view keyword) {
  if (!has_author(record, normalize_name(seed))) return false;
  const auto phrase = tokenize(keyword);
  if (phrase.empty()) return true;
  return contains_phrase(tokenize(record.title), phrase) || contains_phrase(tokenize(record.venue), phrase);
}

std::vector<Transaction> build_transactions(std::span<const BiblioRecord> records, std::string_view seed,
                                            std::string_view keyword) {
  const std::string seed_key = normalize_name(seed);
  if (seed_key.empty()) throw Error(ErrorKind::InvalidArgument, "seed name is empty");
  std::vector<Transaction> transactions;
  for (const auto& record : records) {
    if (!matches_seed(record, seed, keyword)) continue;
    for (const auto& author : record.authors) {
      if (normalize_name(author) == seed_key) continue;
      transactions.push_back({std::string(seed), std::string(keyword), author, record.record_id, true});
    }
  }
  return transactions;
}

RuleStats rule_stats(std::span<const BiblioRecord> records, std::string_view seed, std::string_view keyword,
                     std::string_view consequent) {
  const std::string b = normalize_name(consequent);
  RuleStats stats;
  for (const auto& record : records) {
    const bool lists_b = has_author(record, b);
    if (lists_b) ++stats.db_size;
    if (matches_seed(record, seed, keyword)) {
      ++stats.total_m;
      if (lists_b) ++stats.support;
    }
  }
  return stats;
}

double conditional_probability(const RuleStats& stats) {
  if (stats.total_m == 0) throw Error(ErrorKind::UndefinedProbability, "no transactions match the query");
  return static_cast<double>(stats.support) / static_cast<double>(stats.total_m);
}

double modified_jaccard(const RuleStats& stats) {
  const std::size_t denominator = stats.total_m + stats.db_size - stats.support;
  if (denominator == 0) throw Error(ErrorKind::UndefinedSimilarity, "rule has an empty denominator");
  return static_cast<double>(stats.support) / static_cast<double>(denominator);
}

std::vector<ArsScore> ars_pair_scores(std::span<const BiblioRecord> records, std::span<const Actor> seeds,
                                      std::string_view keyword) {
  std::map<std::string, std::size_t> db_size;  // normalized author -> records listing them
  for (const auto& record : records) {
    for (const auto& author : record.authors) ++db_size[normalize_name(author)];
  }

  std::vector<ArsScore> scores;
  std::map<std::pair<std::string, std::string>, std::size_t> by_pair;
  for (const auto& seed : seeds) {
    const std::string a = normalize_name(seed.name);
    std::size_t total_m = 0;
    std::map<std::string, std::size_t> support;
    std::vector<std::string> order;  // first spelling of each co-author, discovery order
    for (const auto& record : records) {
      if (!matches_seed(record, seed.name, keyword)) continue;
      ++total_m;
      for (const auto& author : record.authors) {
        const std::string b = normalize_name(author);
        if (b == a) continue;
        if (support[b]++ == 0) order.push_back(author);
      }
    }
    for (const auto& author : order) {
      const std::string b = normalize_name(author);
      const RuleStats stats{total_m, support[b], db_size[b]};
      ArsScore score{PairScore{seed.name, author, modified_jaccard(stats), Method::ARS}, conditional_probability(stats)};
      const auto key = std::minmax(a, b);
      auto [it, inserted] = by_pair.try_emplace({key.first, key.second}, scores.size());
      if (inserted) {
        scores.push_back(std::move(score));
      } else if (score.pair.score > scores[it->second].pair.score) {
        scores[it->second].pair.score = score.pair.score;
        scores[it->second].conditional_probability = score.conditional_probability;
      }
    }
  }
  return scores;
}

SocialNetwork extract_ars_network(std::span<const BiblioRecord> records, std::span<const Actor> seeds,
                                  std::string_view keyword, double alpha, bool strict) {
  if (seeds.empty()) throw Error(ErrorKind::InvalidArgument, "ARS extraction needs at least one seed");
  for (const auto& record : records) {
    try {
      validate_record(record);
    } catch (const Error& e) {
      throw Error(e.kind(), fmt::format("ARS extraction: {}", e.what()));
    }
  }
  SocialNetwork net;
  for (const auto& seed : seeds) net.add_actor(seed);
  const auto scores = ars_pair_scores(records, seeds, keyword);
  for (const auto& s : scores) {
    if (!net.find(s.pair.actor_b)) net.add_actor(Actor{s.pair.actor_b, {}});
  }
  for (const auto& s : scores) {
    const bool keep = strict ? s.pair.score > alpha : s.pair.score >= alpha;
    if (keep) net.add_relation(s.pair.actor_a, s.pair.actor_b, s.pair.score, Method::ARS, s.conditional_probability);
  }
  net.attach_labels();
  return net;
}

std::vector<RankedLabel> rank_normalized_tfidf(std::vector<RankedLabel> labels, std::size_t n,
                                               std::size_t root_degree) {
  if (root_degree == 0) throw Error(ErrorKind::InvalidDegree, "root degree must be at least 1");
  const double scale = static_cast<double>(n) / static_cast<double>(root_degree);
  for (auto& label : labels) label.normalized = label.tfidf * scale;
  std::sort(labels.begin(), labels.end(), [](const RankedLabel& a, const RankedLabel& b) {
    if (a.normalized != b.normalized) return a.normalized > b.normalized;
    return a.word < b.word;
  });
  return labels;
}

std::vector<RankedLabel> label_tree_keywords(std::span<const Transaction> transactions, const Corpus& corpus,
                                             std::size_t root_degree, LogBase base) {
  if (root_degree == 0) throw Error(ErrorKind::InvalidDegree, "root degree must be at least 1");
  if (transactions.empty()) return {};
  const std::string seed = transactions.front().seed;
  std::vector<std::string> names{seed};
  for (const auto& t : transactions) {
    if (normalize_name(t.seed) != normalize_name(seed)) {
      throw Error(ErrorKind::InvalidArgument, "transactions come from more than one seed");
    }
    names.push_back(t.consequent);
  }

  std::set<Corpus::DocIndex> tree_docs;
  std::set<std::string> name_tokens;
  for (const auto& name : names) {
    const auto tokens = tokenize(name);
    if (tokens.empty()) continue;
    name_tokens.insert(tokens.begin(), tokens.end());
    for (auto d : corpus.matching(Query{{tokens}, {}})) tree_docs.insert(d);
  }
  if (tree_docs.empty()) return {};

  std::vector<std::vector<std::string>> view;
  std::set<std::string> vocabulary;
  for (auto d : tree_docs) {
    const auto& doc = corpus.document(d);
    auto tokens = tokenize(doc.title + "\n" + doc.body);
    if (tokens.empty()) continue;
    vocabulary.insert(tokens.begin(), tokens.end());
    view.push_back(std::move(tokens));
  }
  if (view.empty()) return {};

  std::vector<RankedLabel> labels;
  for (const auto& word : vocabulary) {
    if (name_tokens.count(word) || is_stopword(word) || utf8_length(word) < 2) continue;
    labels.push_back({word, tfidf(view, word, base), 0.0});
  }
  return rank_normalized_tfidf(std::move(labels), view.size(), root_degree);
}

}  // namespace snx
