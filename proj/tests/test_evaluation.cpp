#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "snx/assoc.hpp"
#include "snx/error.hpp"
#include "snx/evaluation.hpp"
#include "snx/network_io.hpp"
#include "snx/pipeline.hpp"
#include "snx/text.hpp"

namespace snx {
namespace {

const std::filesystem::path kBench = std::filesystem::path(SNX_FIXTURES_DIR) / "benchmark";

SocialNetwork graph(std::initializer_list<std::pair<const char*, const char*>> edges) {
  SocialNetwork net;
  for (const auto& [a, b] : edges) {
    if (!net.find(a)) net.add_actor({a, {}});
    if (!net.find(b)) net.add_actor({b, {}});
    net.add_relation(a, b, 0.5, Method::Given);
  }
  return net;
}

TEST(EdgeIntersection, IdentityAndDisjoint) {
  const auto g = graph({{"a", "b"}, {"b", "c"}});
  EXPECT_EQ(edge_intersection(g, g), 2u);
  EXPECT_EQ(edge_intersection(g, graph({{"a", "c"}, {"d", "e"}})), 0u);
}

TEST(EdgeIntersection, NamesNormalizedAndParallelEdgesCollapse) {
  auto g1 = graph({{"Ann Lee", "Bo"}});
  g1.add_relation("Ann Lee", "Bo", 0.9, Method::SRS);
  const auto g2 = graph({{"bo", "ANN  LEE"}});
  EXPECT_EQ(edge_pairs(g1).size(), 1u);
  EXPECT_EQ(edge_intersection(g1, g2), 1u);
}

TEST(EdgeIntersection, FixtureMatchesNestedLoop) {
  const auto records = read_biblio(kBench / "dblp67.jsonl");
  const auto seeds = read_seeds(kBench / "dblp67_seeds.txt");
  const auto ars = extract_ars_network(records, seeds, "", 0.2);
  const auto bench = load_network(kBench / "dblp67_benchmark.tsv");
  std::size_t expected = 0;
  for (const auto& [i, x] : ars.edges()) {
    const auto xa = normalize_name(ars.node(x.a).actor.name);
    const auto xb = normalize_name(ars.node(x.b).actor.name);
    for (const auto& [j, y] : bench.edges()) {
      const auto ya = normalize_name(bench.node(y.a).actor.name);
      const auto yb = normalize_name(bench.node(y.b).actor.name);
      expected += (xa == ya && xb == yb) || (xa == yb && xb == ya);
    }
  }
  EXPECT_GT(expected, 0u);
  EXPECT_LT(expected, 253u);
  EXPECT_EQ(edge_intersection(ars, bench), expected);
}

TEST(CompareGraphs, IdenticalAllOnes) {
  const auto g = graph({{"a", "b"}, {"b", "c"}, {"c", "a"}});
  const auto cmp = compare_graphs(g, g);
  EXPECT_EQ(*cmp.sim_g, 1.0);
  EXPECT_EQ(*cmp.precision, 1.0);
  EXPECT_EQ(*cmp.recall, 1.0);
  EXPECT_EQ(*cmp.f_measure, 1.0);
}

TEST(CompareGraphs, PublishedRecallRatios) {
  const auto srs = compare_counts(120, 12621, 253);
  EXPECT_NEAR(*srs.recall, 0.474, 0.002);
  EXPECT_NEAR(*srs.precision, 120.0 / 12621.0, 1e-15);
  const auto usr = compare_counts(176, 12621, 253);
  EXPECT_NEAR(*usr.recall, 0.696, 0.002);
}

TEST(CompareGraphs, PublishedEdgeJaccards) {
  EXPECT_NEAR(*compare_counts(120, 12621, 253).sim_g, 0.0094, 0.00005);
  EXPECT_NEAR(*compare_counts(176, 19513, 253).sim_g, 0.009, 0.00005);
}

TEST(CompareGraphs, BenchmarkAgainstItselfFromFile) {
  const auto bench = load_network(kBench / "dblp67_benchmark.tsv");
  EXPECT_EQ(bench.edge_count(), 253u);
  const auto cmp = compare_graphs(bench, bench);
  EXPECT_EQ(cmp.shared_edges, 253u);
  EXPECT_EQ(*cmp.recall, 1.0);
}

TEST(CompareGraphs, EmptySidesAreUndefined) {
  const SocialNetwork empty;
  const auto g = graph({{"a", "b"}});
  const auto none = compare_graphs(empty, empty);
  EXPECT_FALSE(none.sim_g);
  EXPECT_FALSE(none.precision);
  EXPECT_FALSE(none.recall);
  EXPECT_FALSE(none.f_measure);
  const auto half = compare_graphs(g, empty);
  EXPECT_FALSE(half.recall);
  EXPECT_EQ(*half.precision, 0.0);
  EXPECT_EQ(*half.sim_g, 0.0);
  const auto j = nlohmann::json::parse(comparison_to_json(half));
  EXPECT_EQ(j["undefined"], nlohmann::json({"recall", "f_measure"}));
  EXPECT_TRUE(j["recall"].is_null());
}

TEST(CompareGraphs, RejectsImpossibleCounts) { EXPECT_THROW(compare_counts(5, 4, 10), Error); }

TEST(CompareGraphs, SwapExchangesPrecisionAndRecall) {
  const auto g1 = graph({{"a", "b"}, {"b", "c"}, {"c", "d"}});
  const auto g2 = graph({{"a", "b"}, {"x", "y"}});
  const auto ab = compare_graphs(g1, g2);
  const auto ba = compare_graphs(g2, g1);
  EXPECT_EQ(*ab.precision, *ba.recall);
  EXPECT_EQ(*ab.recall, *ba.precision);
  EXPECT_EQ(*ab.sim_g, *ba.sim_g);
  EXPECT_EQ(*ab.f_measure, *ba.f_measure);
}

TEST(FForms, AgreeOnRandomTriples) {
  std::mt19937_64 rng(89);
  std::uniform_int_distribution<std::size_t> count(1, 30000);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t e1 = count(rng);
    const std::size_t e2 = count(rng);
    const std::size_t shared = std::uniform_int_distribution<std::size_t>(1, std::min(e1, e2))(rng);
    const auto a = f_measure_expanded(shared, e1, e2);
    const auto b = f_measure_reduced(shared, e1, e2);
    ASSERT_TRUE(a && b);
    EXPECT_NEAR(*a, *b, 1e-12);
  }
  EXPECT_FALSE(f_measure_expanded(0, 3, 4));
  EXPECT_EQ(*f_measure_reduced(0, 3, 4), 0.0);
}

TEST(SimG, DominatedByPrecisionAndRecall) {
  std::mt19937_64 rng(97);
  std::uniform_int_distribution<std::size_t> count(1, 5000);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t e1 = count(rng);
    const std::size_t e2 = count(rng);
    const std::size_t shared = std::uniform_int_distribution<std::size_t>(0, std::min(e1, e2))(rng);
    const auto cmp = compare_counts(shared, e1, e2);
    EXPECT_LE(*cmp.sim_g, *cmp.precision);
    EXPECT_LE(*cmp.sim_g, *cmp.recall);
    EXPECT_GE(*cmp.sim_g, 0.0);
    EXPECT_LE(*cmp.f_measure, 1.0);
  }
}

std::vector<PairScore> random_scores(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0, 0.001);
  std::vector<PairScore> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"a" + std::to_string(i), "b", u(rng), i % 3 == 0 ? Method::USR : Method::SRS});
  }
  return out;
}

TEST(Coverage, RecountOracle) {
  std::mt19937 rng(101);
  const auto scores = random_scores(rng, 900);
  const auto rows = coverage_report(scores, 0.0001, 1000);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].method, Method::USR);
  for (const auto& row : rows) {
    std::size_t scored = 0;
    std::size_t above = 0;
    for (const auto& s : scores) {
      if (s.method != row.method) continue;
      ++scored;
      above += s.score > 0.0001;
    }
    EXPECT_EQ(row.scored, scored);
    EXPECT_EQ(row.above, above);
    EXPECT_DOUBLE_EQ(row.fraction, static_cast<double>(above) / 1000.0);
  }
}

TEST(Coverage, AllOrNothing) {
  const std::vector<PairScore> s{{"a", "b", 0.5, Method::SRS}, {"a", "c", 0.7, Method::SRS}};
  EXPECT_EQ(coverage_report(s, 0.1, 2)[0].fraction, 1.0);
  EXPECT_EQ(coverage_report(s, 0.9, 2)[0].fraction, 0.0);
  EXPECT_EQ(coverage_report(s, 0.5, 2, false)[0].above, 2u);
  EXPECT_THROW(coverage_report(s, 0.1, 0), Error);
}

TEST(Reports, TableAndCsv) {
  const auto cmp = compare_counts(120, 12621, 253);
  std::ostringstream table;
  print_comparison_table(table, cmp);
  EXPECT_NE(table.str().find("0.474308"), std::string::npos);
  std::ostringstream csv;
  const std::vector<GraphComparison> rows{cmp, compare_counts(0, 0, 0)};
  write_comparison_csv(csv, rows);
  std::istringstream lines(csv.str());
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(header, "shared_edges,e1,e2,sim_g,precision,recall,f_measure");
  EXPECT_EQ(first.rfind("120,12621,253,", 0), 0u);
  EXPECT_EQ(second, "0,0,0,,,,");
}

}  // namespace
}  // namespace snx
