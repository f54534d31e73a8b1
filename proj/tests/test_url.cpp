#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "snx/error.hpp"
#include "snx/url.hpp"
#include "url_gen.hpp"

namespace snx {
namespace {

constexpr const char* kSearchUrl =
    "http://search.yahoo.com/search;_ylt=AjoEJrO9wuxK84pfA74_RvCbvZx4?vc=&fp_ip=my&p=Ann+B.+C.+Lee&"
    "toggle=1&cop=mss&ei=UTF-8&fr=yfp-t-701";

Snippet snippet(std::string url) {
  Snippet s;
  s.url = std::move(url);
  return s;
}

TEST(ParseUrl, SearchEngineExample) {
  const auto parts = parse_url(kSearchUrl);
  EXPECT_EQ(parts.scheme, "http");
  EXPECT_EQ(parts.authority_tokens, (std::vector<std::string>{"search", "yahoo", "com"}));
  ASSERT_EQ(parts.path_tokens.size(), 1u);
  EXPECT_EQ(parts.path_tokens[0], "search;_ylt=AjoEJrO9wuxK84pfA74_RvCbvZx4");
  ASSERT_EQ(parts.query_params.size(), 7u);
  EXPECT_EQ(parts.query_params[0], (QueryParam{"vc", ""}));
  EXPECT_EQ(parts.query_params[1], (QueryParam{"fp_ip", "my"}));
  EXPECT_EQ(parts.query_params[2], (QueryParam{"p", "Ann+B.+C.+Lee"}));
  EXPECT_FALSE(parts.fragment);
}

TEST(ParseUrl, MinimalCase) {
  const auto parts = parse_url("https://a.b/x/y");
  EXPECT_EQ(parts.scheme, "https");
  EXPECT_EQ(parts.authority_tokens, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(parts.path_tokens, (std::vector<std::string>{"x", "y"}));
}

TEST(ParseUrl, AllComponents) {
  const auto parts = parse_url("http://me:pw@Host.Org:8080/a/b/?k&v=1#sec");
  EXPECT_EQ(parts.user_info, "me:pw");
  EXPECT_EQ(parts.port, 8080);
  EXPECT_EQ(parts.path_tokens, (std::vector<std::string>{"a", "b", ""}));
  EXPECT_EQ(parts.query_params[0], (QueryParam{"k", std::nullopt}));
  EXPECT_EQ(parts.fragment, "sec");
}

void expect_malformed(const std::string& raw, const std::string& fragment) {
  try {
    parse_url(raw);
    FAIL() << raw;
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedUrl);
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(ParseUrl, MalformedInputs) {
  expect_malformed("ftp.example.com/x", "missing scheme");
  expect_malformed("://x.y", "missing scheme");
  expect_malformed("http:///path", "missing authority");
  expect_malformed("http://user@/p", "missing authority");
  expect_malformed("http://a..b/", "empty host label");
  expect_malformed("http://a.b:99999/", "invalid port");
  expect_malformed("http://a.b:8o/", "invalid port");
  expect_malformed("1http://a.b/", "invalid scheme");
  expect_malformed("", "empty");
}

TEST(ParseUrl, ReassemblyRoundTrips) {
  std::mt19937 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const auto raw = testgen::random_url(rng);
    const auto parts = parse_url(raw);
    EXPECT_EQ(parse_url(parts.to_string()), parts) << raw;
    for (const auto& t : parts.path_tokens) EXPECT_EQ(t.find('/'), std::string::npos);
  }
}

TEST(Canonicalize, DefaultPortAndCase) {
  EXPECT_EQ(canonicalize("HTTP://Site.COM:80/a/").canonical_string, canonicalize("http://site.com/a").canonical_string);
  EXPECT_EQ(canonicalize("http://site.com/a").canonical_string, "http://site.com/a");
  EXPECT_EQ(canonicalize("https://site.com:443/").canonical_string, "https://site.com");
  EXPECT_EQ(canonicalize("http://site.com:8080/").canonical_string, "http://site.com:8080");
}

TEST(Canonicalize, DropsFragmentAndUserInfo) {
  EXPECT_EQ(canonicalize("http://x.y/p#frag").canonical_string, "http://x.y/p");
  EXPECT_EQ(canonicalize("http://bob@x.y/p").canonical_string, "http://x.y/p");
}

TEST(Canonicalize, SortsQueryStably) {
  EXPECT_EQ(canonicalize("http://x.y/?b=2&a=1&b=1&a").canonical_string, "http://x.y?a=1&a&b=2&b=1");
}

TEST(Canonicalize, DecodesOnlyUnreservedEscapes) {
  EXPECT_EQ(canonicalize("http://x.y/%7Euser/%41%2fb%3a?q=%7e%2F").canonical_string, "http://x.y/~user/A%2Fb%3A?q=~%2F");
}

TEST(Canonicalize, Depth) {
  EXPECT_EQ(canonicalize("http://a.b").depth, 1u);
  EXPECT_EQ(canonicalize("http://a.b/").depth, 1u);
  EXPECT_EQ(canonicalize("http://a.b/x/y/").depth, 3u);
}

TEST(Canonicalize, RulesCanBeSwitchedOff) {
  CanonicalizeOptions keep;
  keep.drop_fragment = false;
  keep.lowercase = false;
  keep.sort_query = false;
  EXPECT_EQ(canonicalize("http://X.y/p?b&a#f", keep).canonical_string, "http://X.y/p?b&a#f");
  CanonicalizeOptions ports;
  ports.strip_default_port = false;
  EXPECT_EQ(canonicalize("http://x.y:80/", ports).canonical_string, "http://x.y:80");
}

// Equivalent spellings produced by hand-applied rules must collapse to the
// single form written out here.
TEST(Canonicalize, MutatedEquivalentsCollapse) {
  const std::string expected = "http://www.ukm.my/staff/profile?id=7&lang=en";
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coin(0, 1);
  std::set<std::string> forms;
  for (int i = 0; i < 100; ++i) {
    std::string url = coin(rng) ? "HTTP://" : "http://";
    url += coin(rng) ? "WWW.UKM.my" : "www.ukm.my";
    if (coin(rng)) url += ":80";
    url += coin(rng) ? "/staff/profile" : "/staff/%70rofile";
    if (coin(rng)) url += "/";
    url += coin(rng) ? "?id=7&lang=en" : "?lang=en&id=7";
    if (coin(rng)) url += "#contact";
    forms.insert(canonicalize(url).canonical_string);
  }
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_EQ(*forms.begin(), expected);
}

TEST(Canonicalize, IdempotentOnRandomUrls) {
  std::mt19937 rng(23);
  for (int i = 0; i < 2000; ++i) {
    const auto once = canonicalize(testgen::random_url(rng));
    const auto twice = canonicalize(once.canonical_string);
    EXPECT_EQ(once.canonical_string, twice.canonical_string);
    EXPECT_EQ(once.parts, twice.parts);
    EXPECT_EQ(once.depth, twice.depth);
  }
}

TEST(HierarchyPrefixes, UnrollsLayers) {
  EXPECT_EQ(hierarchy_prefixes(canonicalize("http://a.b/x/y")), (std::vector<std::string>{"a.b", "a.b/x", "a.b/x/y"}));
  EXPECT_EQ(hierarchy_prefixes(canonicalize("http://a.b")), (std::vector<std::string>{"a.b"}));
  EXPECT_EQ(hierarchy_prefixes(canonicalize(kSearchUrl)).front(), "search.yahoo.com");
  EXPECT_EQ(hierarchy_prefixes(canonicalize("http://a.b:81/x")).front(), "a.b:81");
}

TEST(HierarchyPrefixes, LengthEqualsDepth) {
  std::mt19937 rng(29);
  for (int i = 0; i < 500; ++i) {
    const auto url = canonicalize(testgen::random_url(rng));
    EXPECT_EQ(hierarchy_prefixes(url).size(), url.depth);
  }
}

TEST(UrlVector, SingleUrl) {
  const std::vector<Snippet> s{snippet("http://a.b/x")};
  const auto vec = build_url_vector("A", s);
  EXPECT_EQ(vec.components, (std::map<std::string, double>{{"a.b", 2.0}, {"a.b/x", 2.0}}));
}

TEST(UrlVector, RepeatedUrlScalesByCount) {
  const std::vector<Snippet> s{snippet("http://a.b/x"), snippet("HTTP://A.B:80/x/"), snippet("http://a.b/x#f")};
  const auto vec = build_url_vector("A", s);
  // hand tally: u = 3, depth 2 -> 6 on both keys
  EXPECT_EQ(vec.components, (std::map<std::string, double>{{"a.b", 6.0}, {"a.b/x", 6.0}}));
}

TEST(UrlVector, SharedPrefixesAccumulate) {
  const std::vector<Snippet> s{snippet("http://a.b/x"), snippet("http://a.b/x/y"), snippet("http://c.d")};
  const auto vec = build_url_vector("A", s);
  EXPECT_EQ(vec.components,
            (std::map<std::string, double>{{"a.b", 5.0}, {"a.b/x", 5.0}, {"a.b/x/y", 3.0}, {"c.d", 1.0}}));
}

TEST(UrlVector, EmptyAndSkipped) {
  EXPECT_TRUE(build_url_vector("A", {}).empty());
  const std::vector<Snippet> s{snippet("not a url"), snippet("http://a.b")};
  const auto vec = build_url_vector("A", s);
  EXPECT_EQ(vec.skipped_urls, 1u);
  EXPECT_EQ(vec.components.size(), 1u);
  EXPECT_NE(url_vector_to_json(vec).find("\"a.b\":1.0"), std::string::npos);
}

TEST(UrlDistance, KnownValues) {
  UrlVector a{"a", {{"k1", 2.0}}, 0};
  UrlVector b{"b", {{"k1", 2.0}, {"k2", 2.0}}, 0};
  UrlVector c{"c", {{"k3", 1.0}}, 0};
  EXPECT_NEAR(url_distance(a, a), 1.0, 1e-12);
  EXPECT_NEAR(url_distance(a, b), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_EQ(url_distance(a, c), 0.0);
  EXPECT_EQ(url_distance(a, UrlVector{}), 0.0);
}

TEST(UrlDistance, SymmetricBoundedAndMatchesLonghandCosine) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> n(0, 6);
  std::uniform_real_distribution<double> w(0.5, 10.0);
  for (int i = 0; i < 500; ++i) {
    UrlVector a, b;
    for (int k = 0, m = n(rng); k < m; ++k) a.components["k" + std::to_string(n(rng))] = w(rng);
    for (int k = 0, m = n(rng); k < m; ++k) b.components["k" + std::to_string(n(rng))] = w(rng);
    const double ab = url_distance(a, b);
    EXPECT_DOUBLE_EQ(ab, url_distance(b, a));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_NEAR(ab, oracle::cosine(a.components, b.components), 1e-12);
  }
}

}  // namespace
}  // namespace snx
