#include "snx/pipeline.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "snx/error.hpp"
#include "snx/text.hpp"

namespace snx {

double RunConfig::alpha_for(Method method) const {
  switch (method) {
    case Method::SRS: return alpha_srs;
    case Method::USR: return alpha_usr;
    case Method::ARS: return alpha_ars;
    case Method::Given: break;
  }
  throw Error(ErrorKind::InvalidArgument, "no threshold for imported edges");
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); };
  if (alpha_srs < 0 || alpha_usr < 0 || alpha_ars < 0) fail("alpha must be non-negative");
  if (!(keywords.cutoff_ratio > 0.0 && keywords.cutoff_ratio <= 1.0)) fail("keyword cutoff ratio must be in (0, 1]");
  if (keywords.cap < 1) fail("keyword cap must be at least 1");
  if (keywords.snippet_cap < 1) fail("snippet cap must be at least 1");
}

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

bool parse_bool(std::string_view v) {
  const std::string s = fold_case(v);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw Error(ErrorKind::InvalidArgument, fmt::format("expected a boolean, got '{}'", v));
}

double parse_double(std::string_view v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(std::string(v), &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("expected a number, got '{}'", v));
  }
}

std::size_t parse_count(std::string_view v) {
  const double d = parse_double(v);
  if (d < 0 || d != static_cast<double>(static_cast<std::size_t>(d))) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("expected a non-negative integer, got '{}'", v));
  }
  return static_cast<std::size_t>(d);
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"alpha.srs", [](RunConfig& c, std::string_view v) { c.alpha_srs = parse_double(v); }},
      {"alpha.usr", [](RunConfig& c, std::string_view v) { c.alpha_usr = parse_double(v); }},
      {"alpha.ars", [](RunConfig& c, std::string_view v) { c.alpha_ars = parse_double(v); }},
      {"threshold.strict", [](RunConfig& c, std::string_view v) { c.strict_threshold = parse_bool(v); }},
      {"query.mode", [](RunConfig& c, std::string_view v) { c.mode = parse_query_mode(v); }},
      {"keywords.cutoff_ratio", [](RunConfig& c, std::string_view v) { c.keywords.cutoff_ratio = parse_double(v); }},
      {"keywords.cap", [](RunConfig& c, std::string_view v) { c.keywords.cap = parse_count(v); }},
      {"keywords.stopwords", [](RunConfig& c, std::string_view v) { c.keywords.drop_stopwords = parse_bool(v); }},
      {"keywords.attributes", [](RunConfig& c, std::string_view v) { c.keyword_attributes = parse_bool(v); }},
      {"snippets.cap", [](RunConfig& c, std::string_view v) { c.keywords.snippet_cap = parse_count(v); }},
      {"tfidf.log_base", [](RunConfig& c, std::string_view v) { c.keywords.log_base = parse_log_base(v); }},
      {"delta.order",
       [](RunConfig& c, std::string_view v) {
         if (v == "ascending") c.keywords.delta_ascending = true;
         else if (v == "descending") c.keywords.delta_ascending = false;
         else throw Error(ErrorKind::InvalidArgument, fmt::format("delta.order must be ascending or descending, got '{}'", v));
       }},
      {"ars.keyword", [](RunConfig& c, std::string_view v) { c.ars_keyword = std::string(v); }},
      {"url.lowercase", [](RunConfig& c, std::string_view v) { c.url.lowercase = parse_bool(v); }},
      {"url.strip_default_port", [](RunConfig& c, std::string_view v) { c.url.strip_default_port = parse_bool(v); }},
      {"url.drop_fragment", [](RunConfig& c, std::string_view v) { c.url.drop_fragment = parse_bool(v); }},
      {"url.drop_user_info", [](RunConfig& c, std::string_view v) { c.url.drop_user_info = parse_bool(v); }},
      {"url.sort_query", [](RunConfig& c, std::string_view v) { c.url.sort_query = parse_bool(v); }},
      {"url.decode_unreserved", [](RunConfig& c, std::string_view v) { c.url.decode_unreserved = parse_bool(v); }},
      {"url.trim_trailing_slash", [](RunConfig& c, std::string_view v) { c.url.trim_trailing_slash = parse_bool(v); }},
  };
  return table;
}

}  // namespace

void apply_config_value(RunConfig& config, std::string_view key, std::string_view value) {
  auto it = setters().find(std::string(key));
  if (it == setters().end()) throw Error(ErrorKind::Parse, fmt::format("unknown config key '{}'", key));
  it->second(config, value);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [key, setter] : setters()) keys.push_back(key);
  return keys;
}

void apply_config_text(RunConfig& config, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Parse, fmt::format("config line {}: expected key = value", line_no));
    try {
      apply_config_value(config, trim(content.substr(0, eq)), trim(content.substr(eq + 1)));
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, fmt::format("config line {}: {}", line_no, e.what()));
    }
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    apply_config_text(config, buffer.str());
  } catch (const Error& e) {
    throw Error(e.kind(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::vector<Actor> read_seeds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open {}", path.string()));
  std::vector<Actor> actors;
  std::string line;
  while (std::getline(in, line)) {
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    Actor actor;
    const auto tab = content.find('\t');
    actor.name = trim(content.substr(0, tab));
    if (tab != std::string::npos) {
      std::istringstream attrs(content.substr(tab + 1));
      for (std::string attr; std::getline(attrs, attr, ';');) {
        if (auto a = trim(attr); !a.empty()) actor.attributes.insert(a);
      }
    }
    actors.push_back(std::move(actor));
  }
  return actors;
}

namespace {

template <typename F>
auto stage(std::string_view name, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), fmt::format("{}: {}", name, e.what()));
  }
}

}  // namespace

ExtractionResult extract_network(const SearchProvider& provider, std::span<const Actor> input, Method method,
                                 const RunConfig& config, std::optional<std::span<const BiblioRecord>> records) {
  config.validate();
  if (input.empty()) throw Error(ErrorKind::InvalidArgument, "extraction needs at least one actor");
  if (method == Method::Given) throw Error(ErrorKind::InvalidArgument, "'given' is not an extraction method");
  if (method == Method::ARS && !records) {
    throw Error(ErrorKind::InvalidArgument, "ARS extraction requires bibliographic records");
  }

  ExtractionResult result;
  std::vector<Actor> actors(input.begin(), input.end());
  PairScoringOptions scoring;
  scoring.mode = config.mode;
  scoring.snippet_cap = config.keywords.snippet_cap;
  scoring.url_options = config.url;

  const bool need_keywords = config.keyword_attributes || (method == Method::SRS && config.mode != QueryMode::NoK);
  if (need_keywords) {
    stage("keyword extraction", [&] {
      for (auto& actor : actors) {
        auto report = actor_keywords(provider, actor.name, config.keywords);
        std::vector<std::string> words;
        for (const auto& c : report.ranked) words.push_back(c.word);
        if (config.keyword_attributes) actor.attributes.insert(words.begin(), words.end());
        scoring.keywords[actor.name] = std::move(words);
        result.keywords.emplace(actor.name, std::move(report));
      }
      return 0;
    });
  }

  const double alpha = config.alpha_for(method);
  if (method == Method::ARS) {
    result.network = stage("ARS extraction", [&] {
      return extract_ars_network(*records, actors, config.ars_keyword, alpha, config.strict_threshold);
    });
    result.scores = stage("ARS scoring", [&] {
      std::vector<PairScore> scores;
      for (auto& s : ars_pair_scores(*records, actors, config.ars_keyword)) scores.push_back(std::move(s.pair));
      return scores;
    });
    return result;
  }

  result.network = stage("network construction", [&] {
    SocialNetwork net;
    for (const auto& actor : actors) net.add_actor(actor);
    return net;
  });
  if (actors.size() < 2) return result;

  result.scores = stage(fmt::format("{} scoring", to_string(method)),
                        [&] { return score_all_pairs(provider, actors, method, scoring); });
  stage("edge construction", [&] {
    for (const auto& s : threshold_relations(result.scores, alpha, config.strict_threshold)) {
      result.network.add_relation(s.actor_a, s.actor_b, s.score, method);
    }
    return 0;
  });
  result.network.attach_labels();
  return result;
}

}  // namespace snx
