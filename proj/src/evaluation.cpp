#include "snx/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "snx/error.hpp"
#include "snx/text.hpp"

namespace snx {

std::set<NamePair> edge_pairs(const SocialNetwork& net) {
  std::set<NamePair> pairs;
  for (const auto& [id, e] : net.edges()) {
    std::string a = normalize_name(net.node(e.a).actor.name);
    std::string b = normalize_name(net.node(e.b).actor.name);
    if (b < a) std::swap(a, b);
    pairs.emplace(std::move(a), std::move(b));
  }
  return pairs;
}

std::size_t edge_intersection(const SocialNetwork& g1, const SocialNetwork& g2) {
  const auto p1 = edge_pairs(g1);
  const auto p2 = edge_pairs(g2);
  std::size_t shared = 0;
  for (const auto& p : p1) shared += p2.count(p);
  return shared;
}

std::optional<double> f_measure_expanded(std::size_t shared, std::size_t e1, std::size_t e2) {
  const double i = static_cast<double>(shared);
  const double denominator = static_cast<double>(e1) * i + static_cast<double>(e2) * i;
  if (denominator == 0.0) return std::nullopt;
  return 2.0 * i * i / denominator;
}

std::optional<double> f_measure_reduced(std::size_t shared, std::size_t e1, std::size_t e2) {
  if (e1 + e2 == 0) return std::nullopt;
  return 2.0 * static_cast<double>(shared) / static_cast<double>(e1 + e2);
}

GraphComparison compare_counts(std::size_t shared, std::size_t e1, std::size_t e2) {
  if (shared > e1 || shared > e2) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("shared edges {} exceed |E1|={} or |E2|={}", shared, e1, e2));
  }
  GraphComparison cmp;
  cmp.shared_edges = shared;
  cmp.e1 = e1;
  cmp.e2 = e2;
  const double i = static_cast<double>(shared);
  if (e1 + e2 - shared > 0) cmp.sim_g = i / static_cast<double>(e1 + e2 - shared);
  if (e1 > 0) cmp.precision = i / static_cast<double>(e1);
  if (e2 > 0) cmp.recall = i / static_cast<double>(e2);
  if (e1 > 0 && e2 > 0) {
    cmp.f_measure = f_measure_reduced(shared, e1, e2);
    if (const auto expanded = f_measure_expanded(shared, e1, e2)) {
      if (std::abs(*expanded - *cmp.f_measure) > 1e-12) {
        throw Error(ErrorKind::InvalidArgument, "F-measure forms disagree");
      }
    }
  }
  return cmp;
}

GraphComparison compare_graphs(const SocialNetwork& g1, const SocialNetwork& g2) {
  return compare_counts(edge_intersection(g1, g2), edge_pairs(g1).size(), edge_pairs(g2).size());
}

std::vector<CoverageRow> coverage_report(std::span<const PairScore> scores, double alpha, std::size_t potential_pairs,
                                         bool strict) {
  if (potential_pairs == 0) throw Error(ErrorKind::InvalidArgument, "potential pair count must be positive");
  std::vector<CoverageRow> rows;
  for (const auto& s : scores) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const CoverageRow& r) { return r.method == s.method; });
    if (it == rows.end()) {
      rows.push_back(CoverageRow{s.method, alpha, 0, 0, potential_pairs, 0.0});
      it = std::prev(rows.end());
    }
    ++it->scored;
    if (strict ? s.score > alpha : s.score >= alpha) ++it->above;
  }
  for (auto& row : rows) row.fraction = static_cast<double>(row.above) / static_cast<double>(potential_pairs);
  return rows;
}

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string optional_text(const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : "undefined"; }

std::string optional_csv(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : ""; }

}  // namespace

std::string comparison_to_json(const GraphComparison& cmp) {
  nlohmann::json undefined = nlohmann::json::array();
  if (!cmp.sim_g) undefined.push_back("sim_g");
  if (!cmp.precision) undefined.push_back("precision");
  if (!cmp.recall) undefined.push_back("recall");
  if (!cmp.f_measure) undefined.push_back("f_measure");
  nlohmann::json out = {{"shared_edges", cmp.shared_edges},
                        {"e1", cmp.e1},
                        {"e2", cmp.e2},
                        {"sim_g", optional_number(cmp.sim_g)},
                        {"precision", optional_number(cmp.precision)},
                        {"recall", optional_number(cmp.recall)},
                        {"f_measure", optional_number(cmp.f_measure)},
                        {"undefined", undefined}};
  return out.dump(2);
}

void print_comparison_table(std::ostream& out, const GraphComparison& cmp) {
  out << fmt::format("{:<12} {:>12}\n", "metric", "value");
  out << fmt::format("{:<12} {:>12}\n", "|E1|", cmp.e1);
  out << fmt::format("{:<12} {:>12}\n", "|E2|", cmp.e2);
  out << fmt::format("{:<12} {:>12}\n", "|E1 & E2|", cmp.shared_edges);
  out << fmt::format("{:<12} {:>12}\n", "sim_G", optional_text(cmp.sim_g));
  out << fmt::format("{:<12} {:>12}\n", "precision", optional_text(cmp.precision));
  out << fmt::format("{:<12} {:>12}\n", "recall", optional_text(cmp.recall));
  out << fmt::format("{:<12} {:>12}\n", "F", optional_text(cmp.f_measure));
}

void write_comparison_csv(std::ostream& out, std::span<const GraphComparison> rows, bool header) {
  if (header) out << "shared_edges,e1,e2,sim_g,precision,recall,f_measure\n";
  for (const auto& r : rows) {
    out << r.shared_edges << ',' << r.e1 << ',' << r.e2 << ',' << optional_csv(r.sim_g) << ','
        << optional_csv(r.precision) << ',' << optional_csv(r.recall) << ',' << optional_csv(r.f_measure) << '\n';
  }
}

void print_coverage_table(std::ostream& out, std::span<const CoverageRow> rows) {
  out << fmt::format("{:<6} {:>10} {:>10} {:>10} {:>10} {:>8}\n", "method", "alpha", "scored", "above", "potential",
                     "share");
  for (const auto& r : rows) {
    out << fmt::format("{:<6} {:>10} {:>10} {:>10} {:>10} {:>7.1f}%\n", to_string(r.method), r.alpha, r.scored,
                       r.above, r.potential, 100.0 * r.fraction);
  }
}

}  // namespace snx
