#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "snx/corpus.hpp"

namespace snx {

struct QueryParam {
  std::string name;
  std::optional<std::string> value;

  friend bool operator==(const QueryParam&, const QueryParam&) = default;
};

/// A URL split into scheme, authority and path tokens:
///   scheme://user@label.label.label:port/p1/p2?name=value&...#fragment
/// Host labels keep their written order, so the top-level label is last.
struct UrlParts {
  std::string scheme;
  std::optional<std::string> user_info;
  std::vector<std::string> authority_tokens;
  std::optional<std::uint16_t> port;
  std::vector<std::string> path_tokens;
  std::vector<QueryParam> query_params;
  std::optional<std::string> fragment;

  std::string host() const;
  /// Reassemble into a URL string; parse_url(to_string()) gives back *this.
  std::string to_string() const;

  friend bool operator==(const UrlParts&, const UrlParts&) = default;
};

/// Throws MalformedUrl naming the missing or broken component.
UrlParts parse_url(std::string_view raw);

/// Each rule can be switched off to probe how much it matters.
struct CanonicalizeOptions {
  bool lowercase = true;
  bool strip_default_port = true;
  bool drop_fragment = true;
  bool drop_user_info = true;
  bool sort_query = true;
  bool decode_unreserved = true;
  bool trim_trailing_slash = true;
};

struct CanonicalUrl {
  std::string canonical_string;
  UrlParts parts;
  /// Layer count within the site hierarchy: 1 + number of path tokens.
  std::size_t depth = 1;
};

CanonicalUrl canonicalize(const UrlParts& parts, const CanonicalizeOptions& options = {});
CanonicalUrl canonicalize(std::string_view raw, const CanonicalizeOptions& options = {});

/// ["host", "host/p1", "host/p1/p2", ...]; one key per layer.
std::vector<std::string> hierarchy_prefixes(const CanonicalUrl& url);

/// Sparse weights over hierarchy-prefix keys for one actor.
struct UrlVector {
  std::string actor;
  std::map<std::string, double> components;
  std::size_t skipped_urls = 0;

  bool empty() const { return components.empty(); }
};

/// Identical canonical URLs are grouped (u = group size); a URL of depth n
/// adds u * n to each of its hierarchy prefixes. Unparseable URLs are
/// counted in skipped_urls.
UrlVector build_url_vector(std::string_view actor, std::span<const Snippet> snippets,
                           const CanonicalizeOptions& options = {});

/// Cosine similarity over the union of keys; 0 when either side is empty.
double url_distance(const UrlVector& a, const UrlVector& b);

std::string url_vector_to_json(const UrlVector& vec);

}  // namespace snx
