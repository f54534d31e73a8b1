#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "snx/cooccur.hpp"
#include "snx/network.hpp"

namespace snx {

using NamePair = std::pair<std::string, std::string>;

/// Unordered pairs of normalized endpoint names; parallel edges collapse.
std::set<NamePair> edge_pairs(const SocialNetwork& net);

std::size_t edge_intersection(const SocialNetwork& g1, const SocialNetwork& g2);

/// Edge-overlap metrics of an extracted graph against a benchmark. A metric
/// whose denominator is zero is left empty instead of reported as 0.
struct GraphComparison {
  std::size_t shared_edges = 0;
  std::size_t e1 = 0;
  std::size_t e2 = 0;
  std::optional<double> sim_g;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f_measure;
};

/// 2 I^2 / (|E1| I + |E2| I), the F measure as usually written over edge sets.
/// Empty when I = 0.
std::optional<double> f_measure_expanded(std::size_t shared, std::size_t e1, std::size_t e2);
/// 2 I / (|E1| + |E2|). Empty when both edge sets are empty.
std::optional<double> f_measure_reduced(std::size_t shared, std::size_t e1, std::size_t e2);

/// Throws InvalidArgument when shared exceeds either edge count.
GraphComparison compare_counts(std::size_t shared, std::size_t e1, std::size_t e2);
GraphComparison compare_graphs(const SocialNetwork& g1, const SocialNetwork& g2);

struct CoverageRow {
  Method method = Method::SRS;
  double alpha = 0.0;
  std::size_t scored = 0;
  std::size_t above = 0;
  std::size_t potential = 0;
  double fraction = 0.0;  ///< above / potential
};

/// Per method (in first-seen order): how many of the potential pairs score
/// above alpha. Throws InvalidArgument when potential_pairs is 0.
std::vector<CoverageRow> coverage_report(std::span<const PairScore> scores, double alpha, std::size_t potential_pairs,
                                         bool strict = true);

std::string comparison_to_json(const GraphComparison& cmp);
void print_comparison_table(std::ostream& out, const GraphComparison& cmp);
void write_comparison_csv(std::ostream& out, std::span<const GraphComparison> rows, bool header = true);
void print_coverage_table(std::ostream& out, std::span<const CoverageRow> rows);

}  // namespace snx
