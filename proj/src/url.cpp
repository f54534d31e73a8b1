#include "snx/url.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "snx/error.hpp"

namespace snx {
namespace {

[[noreturn]] void malformed(std::string_view raw, std::string_view what) {
  throw Error(ErrorKind::MalformedUrl, fmt::format("malformed URL '{}': {}", raw, what));
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool valid_scheme(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '+' || c == '-' || c == '.';
  });
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t next = s.find(sep, start);
    out.emplace_back(s.substr(start, next == std::string_view::npos ? next : next - start));
    if (next == std::string_view::npos) break;
    start = next + 1;
  }
  return out;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool unreserved(unsigned char c) { return std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~'; }

// Decode %XX when it names an unreserved character; upper-case the hex
// digits of every other escape.
std::string normalize_escapes(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      const int hi = hex_value(s[i + 1]);
      const int lo = hex_value(s[i + 2]);
      if (hi >= 0 && lo >= 0) {
        const auto c = static_cast<unsigned char>(hi * 16 + lo);
        if (unreserved(c)) {
          out.push_back(static_cast<char>(c));
        } else {
          out.push_back('%');
          out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(s[i + 1]))));
          out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(s[i + 2]))));
        }
        i += 2;
        continue;
      }
    }
    out.push_back(s[i]);
  }
  return out;
}

std::optional<std::uint16_t> default_port(std::string_view scheme) {
  if (scheme == "http") return 80;
  if (scheme == "https") return 443;
  return std::nullopt;
}

}  // namespace

std::string UrlParts::host() const {
  std::string out;
  for (std::size_t i = 0; i < authority_tokens.size(); ++i) {
    if (i) out.push_back('.');
    out += authority_tokens[i];
  }
  return out;
}

std::string UrlParts::to_string() const {
  std::string out = scheme + "://";
  if (user_info) out += *user_info + "@";
  out += host();
  if (port) out += fmt::format(":{}", *port);
  for (const auto& token : path_tokens) out += "/" + token;
  for (std::size_t i = 0; i < query_params.size(); ++i) {
    out.push_back(i == 0 ? '?' : '&');
    out += query_params[i].name;
    if (query_params[i].value) out += "=" + *query_params[i].value;
  }
  if (fragment) out += "#" + *fragment;
  return out;
}

UrlParts parse_url(std::string_view raw) {
  if (raw.empty()) malformed(raw, "empty string");
  const std::size_t sep = raw.find("://");
  if (sep == std::string_view::npos || sep == 0) malformed(raw, "missing scheme");
  UrlParts parts;
  parts.scheme = std::string(raw.substr(0, sep));
  if (!valid_scheme(parts.scheme)) malformed(raw, "invalid scheme");

  const std::string_view rest = raw.substr(sep + 3);
  const std::size_t authority_end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, authority_end);
  if (const std::size_t at = authority.rfind('@'); at != std::string_view::npos) {
    parts.user_info = std::string(authority.substr(0, at));
    authority = authority.substr(at + 1);
  }

  std::string_view host = authority;
  std::string_view port;
  if (!host.empty() && host.front() == '[') {
    const std::size_t close = host.find(']');
    if (close == std::string_view::npos) malformed(raw, "unterminated IP literal");
    if (close + 1 < host.size()) {
      if (host[close + 1] != ':') malformed(raw, "junk after IP literal");
      port = host.substr(close + 2);
    }
    host = host.substr(0, close + 1);
  } else if (const std::size_t colon = host.rfind(':'); colon != std::string_view::npos) {
    port = host.substr(colon + 1);
    host = host.substr(0, colon);
  }
  if (host.empty()) malformed(raw, "missing authority");
  if (!port.empty()) {
    if (port.size() > 5 || !std::all_of(port.begin(), port.end(), [](unsigned char c) { return std::isdigit(c); })) {
      malformed(raw, "invalid port");
    }
    const int value = std::stoi(std::string(port));
    if (value > 65535) malformed(raw, "invalid port");
    parts.port = static_cast<std::uint16_t>(value);
  }
  if (host.front() == '[') {
    parts.authority_tokens.emplace_back(host);
  } else {
    if (host.back() == '.') host.remove_suffix(1);
    parts.authority_tokens = split(host, '.');
    for (const auto& label : parts.authority_tokens) {
      if (label.empty()) malformed(raw, "empty host label");
    }
  }

  std::string_view remainder = authority_end == std::string_view::npos ? std::string_view{} : rest.substr(authority_end);
  if (const std::size_t hash = remainder.find('#'); hash != std::string_view::npos) {
    parts.fragment = std::string(remainder.substr(hash + 1));
    remainder = remainder.substr(0, hash);
  }
  std::string_view path = remainder;
  if (const std::size_t question = remainder.find('?'); question != std::string_view::npos) {
    path = remainder.substr(0, question);
    for (auto& piece : split(remainder.substr(question + 1), '&')) {
      if (piece.empty()) continue;
      const std::size_t eq = piece.find('=');
      if (eq == std::string::npos) {
        parts.query_params.push_back({piece, std::nullopt});
      } else {
        parts.query_params.push_back({piece.substr(0, eq), piece.substr(eq + 1)});
      }
    }
  }
  if (!path.empty()) parts.path_tokens = split(path.substr(1), '/');
  return parts;
}

CanonicalUrl canonicalize(const UrlParts& input, const CanonicalizeOptions& options) {
  UrlParts parts = input;
  if (parts.scheme.empty() || parts.authority_tokens.empty()) {
    throw Error(ErrorKind::MalformedUrl, "cannot canonicalize URL without scheme and authority");
  }
  if (options.lowercase) {
    parts.scheme = ascii_lower(parts.scheme);
    for (auto& label : parts.authority_tokens) label = ascii_lower(label);
  }
  if (options.strip_default_port && parts.port && parts.port == default_port(ascii_lower(parts.scheme))) {
    parts.port.reset();
  }
  if (options.drop_fragment) parts.fragment.reset();
  if (options.drop_user_info) parts.user_info.reset();
  if (options.decode_unreserved) {
    for (auto& token : parts.path_tokens) token = normalize_escapes(token);
    for (auto& param : parts.query_params) {
      param.name = normalize_escapes(param.name);
      if (param.value) param.value = normalize_escapes(*param.value);
    }
  }
  if (options.trim_trailing_slash) {
    while (!parts.path_tokens.empty() && parts.path_tokens.back().empty()) parts.path_tokens.pop_back();
  }
  if (options.sort_query) {
    std::stable_sort(parts.query_params.begin(), parts.query_params.end(),
                     [](const QueryParam& a, const QueryParam& b) { return a.name < b.name; });
  }
  CanonicalUrl out;
  out.canonical_string = parts.to_string();
  out.depth = 1 + parts.path_tokens.size();
  out.parts = std::move(parts);
  return out;
}

CanonicalUrl canonicalize(std::string_view raw, const CanonicalizeOptions& options) {
  return canonicalize(parse_url(raw), options);
}

std::vector<std::string> hierarchy_prefixes(const CanonicalUrl& url) {
  std::string key = url.parts.host();
  if (url.parts.port) key += fmt::format(":{}", *url.parts.port);
  std::vector<std::string> keys;
  keys.reserve(url.depth);
  keys.push_back(key);
  for (const auto& token : url.parts.path_tokens) {
    key += "/" + token;
    keys.push_back(key);
  }
  return keys;
}

UrlVector build_url_vector(std::string_view actor, std::span<const Snippet> snippets,
                           const CanonicalizeOptions& options) {
  UrlVector vec;
  vec.actor = std::string(actor);
  std::map<std::string, std::pair<std::size_t, CanonicalUrl>> groups;
  for (const auto& snippet : snippets) {
    try {
      CanonicalUrl url = canonicalize(snippet.url, options);
      auto [it, inserted] = groups.try_emplace(url.canonical_string, 0, std::move(url));
      ++it->second.first;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MalformedUrl) throw;
      ++vec.skipped_urls;
    }
  }
  for (const auto& [canonical, group] : groups) {
    const auto& [count, url] = group;
    const double weight = static_cast<double>(count) * static_cast<double>(url.depth);
    for (const auto& key : hierarchy_prefixes(url)) vec.components[key] += weight;
  }
  return vec;
}

double url_distance(const UrlVector& a, const UrlVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (const auto& [key, w] : a.components) {
    norm_a += w * w;
    if (auto it = b.components.find(key); it != b.components.end()) dot += w * it->second;
  }
  for (const auto& [key, w] : b.components) norm_b += w * w;
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(norm_a) * std::sqrt(norm_b)), 0.0, 1.0);
}

std::string url_vector_to_json(const UrlVector& vec) {
  nlohmann::json components = nlohmann::json::object();
  for (const auto& [key, w] : vec.components) components[key] = w;
  return nlohmann::json{{"actor", vec.actor}, {"components", components}, {"skipped_urls", vec.skipped_urls}}.dump();
}

}  // namespace snx
