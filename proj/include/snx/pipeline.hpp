#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snx/assoc.hpp"
#include "snx/cooccur.hpp"
#include "snx/corpus.hpp"
#include "snx/keywords.hpp"
#include "snx/network.hpp"
#include "snx/url.hpp"

namespace snx {

/// Every tunable of an extraction run, with the reference defaults.
struct RunConfig {
  double alpha_srs = kDefaultAlphaSrs;
  double alpha_usr = kDefaultAlphaUsr;
  double alpha_ars = kDefaultAlphaArs;
  bool strict_threshold = true;
  QueryMode mode = QueryMode::NoK;
  KeywordOptions keywords;
  CanonicalizeOptions url;
  /// Attach each actor's selected keywords as attributes before scoring.
  bool keyword_attributes = true;
  /// Keyword narrowing the ARS query (empty: name only).
  std::string ars_keyword;

  double alpha_for(Method method) const;
  /// Throws InvalidArgument on a negative alpha, a cutoff ratio outside
  /// (0, 1] or a zero cap.
  void validate() const;
};

/// Applies `key = value` lines ('#' comments, blank lines ignored). Throws
/// Parse on an unknown key or a bad value, naming the line.
void apply_config_text(RunConfig& config, std::string_view text);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);
/// Applies a single key/value pair; the same keys as the file format.
void apply_config_value(RunConfig& config, std::string_view key, std::string_view value);
/// Names of every recognized configuration key.
std::vector<std::string> config_keys();

/// One actor per non-empty line; '#' starts a comment line. An optional
/// tab-separated second column holds ';'-separated attributes.
std::vector<Actor> read_seeds(const std::filesystem::path& path);

struct ExtractionResult {
  SocialNetwork network;
  /// All scored pairs before thresholding.
  std::vector<PairScore> scores;
  std::map<std::string, KeywordReport> keywords;
};

/// Runs one extraction method end to end: keyword attributes, pair scoring,
/// thresholding, node/edge construction and labelling. ARS needs `records`.
/// Errors carry the failing stage in their message.
ExtractionResult extract_network(const SearchProvider& provider, std::span<const Actor> actors, Method method,
                                 const RunConfig& config,
                                 std::optional<std::span<const BiblioRecord>> records = std::nullopt);

}  // namespace snx
