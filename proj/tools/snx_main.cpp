// snx: build, extract and score social networks from a document corpus.
//
//   snx ingest   INPUT... --out corpus.json
//   snx extract  --corpus corpus.json --seeds seeds.txt --method srs --out g.graphml
//   snx evaluate --extracted g.graphml --benchmark bench.tsv --report table
//   snx keywords --corpus corpus.json --actor "Name" [--disambig]
//
// Exit status: 0 ok, 2 usage, 3 I/O, 4 data.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "snx/assoc.hpp"
#include "snx/corpus.hpp"
#include "snx/error.hpp"
#include "snx/evaluation.hpp"
#include "snx/keywords.hpp"
#include "snx/network_io.hpp"
#include "snx/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A saved corpus (.json), a JSON-lines file, or a directory of text files.
snx::Corpus open_corpus(const fs::path& path) {
  if (fs::is_directory(path)) return snx::Corpus::ingest(snx::read_text_directory(path));
  if (path.extension() == ".jsonl") return snx::Corpus::ingest(snx::read_jsonl_documents(path));
  return snx::load_corpus(path);
}

// Output goes to `path`, or to stdout when it is empty or "-".
template <typename F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw snx::Error(snx::ErrorKind::Io, fmt::format("cannot write {}", path));
  write(out);
}

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
};

snx::RunConfig load_config(const Common& common) {
  snx::RunConfig config;
  std::string path = common.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("SNX_CONFIG"); env && *env) path = env;
  }
  if (!path.empty()) snx::apply_config_file(config, path);
  for (const auto& kv : common.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError(fmt::format("--set expects key=value, got '{}'", kv));
    try {
      snx::apply_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
    } catch (const snx::Error& e) {
      throw UsageError(e.what());
    }
  }
  return config;
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--config", common.config_path, "key = value settings file (default: $SNX_CONFIG)");
  cmd->add_option("--set", common.overrides, "override one setting, key=value (repeatable)");
}

// ---- ingest ----

struct IngestArgs {
  std::vector<std::string> inputs;
  std::string out = "corpus.json";
  std::string manifest;
};

int run_ingest(const IngestArgs& args) {
  std::vector<snx::Document> docs;
  for (const auto& input : args.inputs) {
    const fs::path p(input);
    auto more = fs::is_directory(p) ? snx::read_text_directory(p) : snx::read_jsonl_documents(p);
    docs.insert(docs.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  const auto corpus = snx::Corpus::ingest(std::move(docs));
  const auto manifest = snx::save_corpus(corpus, args.out);
  fs::path manifest_path = args.manifest;
  if (manifest_path.empty()) manifest_path = fs::path(args.out).replace_extension(".manifest.json");
  const nlohmann::json m = {{"corpus", fs::path(args.out).filename().string()},
                            {"documents", manifest.document_count},
                            {"tokens", manifest.token_count},
                            {"terms", manifest.term_count},
                            {"checksum", manifest.checksum},
                            {"created", manifest.created}};
  with_output(manifest_path.string(), [&](std::ostream& out) { out << m.dump(2) << '\n'; });
  std::cerr << fmt::format("ingested {} documents ({} tokens, {} terms) -> {}\n", manifest.document_count,
                           manifest.token_count, manifest.term_count, args.out);
  return 0;
}

// ---- extract ----

struct ExtractArgs {
  Common common;
  std::string corpus;
  std::string seeds;
  std::string records;
  std::string method = "srs";
  std::optional<double> alpha;
  std::string mode;
  std::string out;
  std::string format;
  std::string scores;
};

int run_extract(const ExtractArgs& args) {
  snx::RunConfig config = load_config(args.common);
  const snx::Method method = snx::parse_method(args.method);
  if (!args.mode.empty()) config.mode = snx::parse_query_mode(args.mode);
  if (args.alpha) {
    switch (method) {
      case snx::Method::SRS: config.alpha_srs = *args.alpha; break;
      case snx::Method::USR: config.alpha_usr = *args.alpha; break;
      case snx::Method::ARS: config.alpha_ars = *args.alpha; break;
      case snx::Method::Given: break;
    }
  }

  const auto actors = snx::read_seeds(args.seeds);
  if (actors.empty()) throw UsageError(fmt::format("{} lists no actors", args.seeds));

  std::vector<snx::BiblioRecord> records;
  if (method == snx::Method::ARS) {
    if (args.records.empty()) throw UsageError("--method ars needs --records");
    records = snx::read_biblio(args.records);
  }
  snx::Corpus corpus;
  if (!args.corpus.empty()) {
    corpus = open_corpus(args.corpus);
  } else if (method == snx::Method::ARS) {
    config.keyword_attributes = false;
  } else {
    throw UsageError(fmt::format("--method {} needs --corpus", args.method));
  }

  const auto result = method == snx::Method::ARS
                          ? snx::extract_network(corpus, actors, method, config, std::span<const snx::BiblioRecord>(records))
                          : snx::extract_network(corpus, actors, method, config);

  const snx::GraphFormat format = args.format.empty()
                                      ? (args.out.empty() ? snx::GraphFormat::GraphML : snx::graph_format_for(args.out))
                                      : snx::parse_graph_format(args.format);
  with_output(args.out, [&](std::ostream& out) {
    switch (format) {
      case snx::GraphFormat::GraphML: snx::write_graphml(result.network, out); break;
      case snx::GraphFormat::Json: snx::write_json(result.network, out); break;
      case snx::GraphFormat::EdgeList: snx::write_edgelist(result.network, out); break;
    }
  });

  std::string scores_path = args.scores;
  if (scores_path.empty() && !args.out.empty() && args.out != "-") {
    scores_path = fs::path(args.out).replace_extension(".scores.csv").string();
  }
  if (!scores_path.empty()) {
    with_output(scores_path, [&](std::ostream& out) { snx::write_scores_csv(out, result.scores); });
  }

  std::size_t undefined = 0;
  std::size_t fallback = 0;
  for (const auto& s : result.scores) {
    undefined += s.undefined;
    fallback += s.keyword_fallback;
  }
  std::cerr << fmt::format("{}: {} nodes, {} edges from {} scored pairs (alpha {}", snx::to_string(method),
                           result.network.node_count(), result.network.edge_count(), result.scores.size(),
                           config.alpha_for(method));
  if (undefined) std::cerr << fmt::format(", {} undefined", undefined);
  if (fallback) std::cerr << fmt::format(", {} keyword fallbacks", fallback);
  std::cerr << ")\n";
  return 0;
}

// ---- evaluate ----

struct EvaluateArgs {
  std::string extracted;
  std::string benchmark;
  std::string report = "table";
  std::string out;
};

int run_evaluate(const EvaluateArgs& args) {
  const auto g1 = snx::load_network(args.extracted);
  const auto g2 = snx::load_network(args.benchmark);
  const auto cmp = snx::compare_graphs(g1, g2);
  with_output(args.out, [&](std::ostream& out) {
    if (args.report == "json") {
      out << snx::comparison_to_json(cmp) << '\n';
    } else if (args.report == "csv") {
      const std::vector<snx::GraphComparison> rows{cmp};
      snx::write_comparison_csv(out, rows);
    } else {
      snx::print_comparison_table(out, cmp);
    }
  });
  return 0;
}

// ---- keywords ----

struct KeywordArgs {
  Common common;
  std::string corpus;
  std::vector<std::string> actors;
  std::string seeds;
  std::string format = "table";
  bool disambig = false;
  std::string truth;
  std::string out;
};

nlohmann::json report_json(const snx::KeywordReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : r.ranked) {
    rows.push_back({{"word", c.word}, {"tfidf", c.tfidf}, {"hit_fraction", c.hit_fraction}, {"delta", c.delta}});
  }
  return {{"actor", r.actor}, {"snippets", r.snippet_count}, {"keywords", rows}};
}

int run_keywords(const KeywordArgs& args) {
  const snx::RunConfig config = load_config(args.common);
  const auto corpus = open_corpus(args.corpus);
  std::vector<std::string> names = args.actors;
  if (!args.seeds.empty()) {
    for (const auto& a : snx::read_seeds(args.seeds)) names.push_back(a.name);
  }
  if (names.empty()) throw UsageError("give --actor or --seeds");
  if (!args.truth.empty() && names.size() != 1) throw UsageError("--truth scores a single --actor");

  nlohmann::json all = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& name : names) {
    const auto report = snx::actor_keywords(corpus, name, config.keywords);
    if (report.snippet_count == 0) std::cerr << fmt::format("warning: no documents mention \"{}\"\n", name);
    auto entry = report_json(report);

    if (args.format == "csv") {
      if (all.empty() && text.tellp() == 0) text << "actor,rank,word,tfidf,hit_fraction,delta\n";
      for (std::size_t i = 0; i < report.ranked.size(); ++i) {
        const auto& c = report.ranked[i];
        text << fmt::format("\"{}\",{},{},{},{},{}\n", name, i + 1, c.word, c.tfidf, c.hit_fraction, c.delta);
      }
    } else if (args.format == "table") {
      text << fmt::format("{} ({} snippets)\n", name, report.snippet_count);
      text << fmt::format("  {:>4}  {:<20} {:>10} {:>12} {:>8}\n", "rank", "word", "tfidf", "hit_fraction", "delta");
      for (std::size_t i = 0; i < report.ranked.size(); ++i) {
        const auto& c = report.ranked[i];
        text << fmt::format("  {:>4}  {:<20} {:>10.6f} {:>12.6f} {:>8.4f}\n", i + 1, c.word, c.tfidf, c.hit_fraction,
                            c.delta);
      }
    }

    if (args.disambig) {
      std::vector<std::string> words;
      for (const auto& c : report.ranked) words.push_back(c.word);
      const auto snippets = corpus.search(snx::quote(name), config.keywords.snippet_cap);
      const auto clusters = snx::cluster_references(snippets, words, config.url);
      entry["clusters"] = nlohmann::json::parse(snx::partition_to_json(clusters));
      if (args.format == "table") text << fmt::format("  {} clusters\n", clusters.blocks().size());
      if (!args.truth.empty()) {
        std::ifstream in(args.truth);
        if (!in) throw snx::Error(snx::ErrorKind::Io, fmt::format("cannot open {}", args.truth));
        const std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const auto s = snx::clustering_scores(snx::partition_from_json(body), clusters);
        entry["clustering"] = {{"recall", s.recall}, {"precision", s.precision}, {"f", s.f}};
        if (args.format == "table") {
          text << fmt::format("  REC {:.4f}  PREC {:.4f}  F {:.4f}\n", s.recall, s.precision, s.f);
        }
      }
    }
    all.push_back(std::move(entry));
  }
  with_output(args.out, [&](std::ostream& out) {
    if (args.format == "json") {
      out << all.dump(2) << '\n';
    } else {
      out << text.str();
    }
  });
  return 0;
}

int exit_code_for(snx::ErrorKind kind) {
  switch (kind) {
    case snx::ErrorKind::Io: return kExitIo;
    case snx::ErrorKind::InvalidQuery: return kExitUsage;
    default: return kExitData;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social network extraction from a document corpus"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Index JSON-lines files or text directories");
  ingest_cmd->add_option("inputs", ingest.inputs, "JSON-lines files or directories")->required();
  ingest_cmd->add_option("--out", ingest.out, "saved corpus path")->capture_default_str();
  ingest_cmd->add_option("--manifest", ingest.manifest, "manifest path (default: <out>.manifest.json)");

  ExtractArgs extract;
  auto* extract_cmd = app.add_subcommand("extract", "Extract a social network for a seed list");
  add_common(extract_cmd, extract.common);
  extract_cmd->add_option("--corpus", extract.corpus, "saved corpus, .jsonl file or text directory");
  extract_cmd->add_option("--seeds", extract.seeds, "one actor per line")->required();
  extract_cmd->add_option("--records", extract.records, "bibliographic records (.jsonl or .bib), for ars");
  extract_cmd->add_option("--method", extract.method, "srs, usr or ars")
      ->check(CLI::IsMember({"srs", "usr", "ars"}, CLI::ignore_case))
      ->capture_default_str();
  extract_cmd->add_option("--alpha", extract.alpha, "edge threshold for the chosen method")->check(CLI::NonNegativeNumber);
  extract_cmd->add_option("--mode", extract.mode, "noK, K1, K2 or K1K2")
      ->check(CLI::IsMember({"noK", "K1", "K2", "K1K2"}, CLI::ignore_case));
  extract_cmd->add_option("--out", extract.out, "graph output (default: stdout)");
  extract_cmd->add_option("--format", extract.format, "graphml, json or edgelist (default: from --out)")
      ->check(CLI::IsMember({"graphml", "json", "edgelist"}, CLI::ignore_case));
  extract_cmd->add_option("--scores", extract.scores, "pair scores CSV (default: <out>.scores.csv)");

  EvaluateArgs evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Compare an extracted graph with a benchmark");
  evaluate_cmd->add_option("--extracted", evaluate.extracted, "extracted graph")->required();
  evaluate_cmd->add_option("--benchmark", evaluate.benchmark, "benchmark graph")->required();
  evaluate_cmd->add_option("--report", evaluate.report, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--out", evaluate.out, "report path (default: stdout)");

  KeywordArgs keywords;
  auto* keywords_cmd = app.add_subcommand("keywords", "Rank an actor's keywords by tfidf, hits and delta");
  add_common(keywords_cmd, keywords.common);
  keywords_cmd->add_option("--corpus", keywords.corpus, "saved corpus, .jsonl file or text directory")
      ->required();
  keywords_cmd->add_option("--actor", keywords.actors, "actor name (repeatable)");
  keywords_cmd->add_option("--seeds", keywords.seeds, "seed list instead of --actor");
  keywords_cmd->add_option("--format", keywords.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  keywords_cmd->add_flag("--disambig", keywords.disambig, "also cluster the actor's snippets");
  keywords_cmd->add_option("--truth", keywords.truth, "true partition (JSON) to score the clusters against");
  keywords_cmd->add_option("--out", keywords.out, "report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }
  if (!keywords.truth.empty()) keywords.disambig = true;

  try {
    if (*ingest_cmd) return run_ingest(ingest);
    if (*extract_cmd) return run_extract(extract);
    if (*evaluate_cmd) return run_evaluate(evaluate);
    if (*keywords_cmd) return run_keywords(keywords);
  } catch (const UsageError& e) {
    std::cerr << "snx: " << e.what() << '\n';
    return kExitUsage;
  } catch (const snx::Error& e) {
    std::cerr << fmt::format("snx: {} error: {}\n", snx::to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "snx: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
