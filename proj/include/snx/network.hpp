#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>

namespace snx {

/// Relation-scoring method. `Given` marks edges imported from a benchmark
/// that carries no method of its own.
enum class Method { SRS, USR, ARS, Given };

std::string_view to_string(Method method);
/// Accepts srs/usr/ars/given in any case.
Method parse_method(std::string_view text);

/// A social entity and its attribute set.
struct Actor {
  std::string name;
  std::set<std::string> attributes;
};

using NodeId = std::size_t;
using EdgeId = std::size_t;

struct Node {
  NodeId id = 0;
  Actor actor;
};

/// An undirected tie. `labels` is the shared attribute set of the endpoints.
struct Edge {
  EdgeId id = 0;
  NodeId a = 0;
  NodeId b = 0;
  double weight = 0.0;
  Method method = Method::Given;
  std::set<std::string> labels;
  std::optional<double> conditional_probability;
};

/// Labelled social network. Actors map one-to-one onto nodes through their
/// normalized names; each relation becomes an edge whose labels are the
/// attributes both endpoints share. Parallel edges between the same pair are
/// allowed as long as (pair, method, label set) differs.
class SocialNetwork {
public:
  /// Throws DuplicateActor when the normalized name is already mapped and
  /// InvalidArgument on an empty name.
  NodeId add_actor(Actor actor);

  /// Removes the actor and every incident edge. Throws UnknownActor.
  void remove_actor(std::string_view name);

  /// Adds a tie between two mapped actors. Re-adding an existing
  /// (pair, method, labels) key keeps one edge with the larger weight.
  /// Throws UnknownActor, SelfLoop, or InvalidArgument for weights outside
  /// [0, 1].
  EdgeId add_relation(std::string_view a, std::string_view b, double weight, Method method,
                      std::optional<double> conditional_probability = std::nullopt);

  /// Rebuilds the attribute-to-node and attribute-to-edge label maps.
  SocialNetwork& attach_labels();

  std::optional<NodeId> find(std::string_view name) const;
  const Node& node(NodeId id) const;
  const Edge& edge(EdgeId id) const;
  const std::map<NodeId, Node>& nodes() const { return nodes_; }
  const std::map<EdgeId, Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// attribute -> nodes carrying it
  const std::map<std::string, std::set<NodeId>>& node_labels() const { return node_labels_; }
  /// attribute -> edges labelled with it
  const std::map<std::string, std::set<EdgeId>>& edge_labels() const { return edge_labels_; }

  /// Throws InvalidArgument describing the first broken invariant.
  void validate() const;

  /// Content equality: nodes and edges compared in id order by names,
  /// attributes, weights, methods and labels. Ids themselves are ignored.
  friend bool operator==(const SocialNetwork& x, const SocialNetwork& y);

private:
  using EdgeKey = std::tuple<NodeId, NodeId, Method, std::set<std::string>>;

  std::map<NodeId, Node> nodes_;
  std::map<EdgeId, Edge> edges_;
  std::map<std::string, NodeId> actor_map_;
  std::map<EdgeKey, EdgeId> edge_keys_;
  std::map<std::string, std::set<NodeId>> node_labels_;
  std::map<std::string, std::set<EdgeId>> edge_labels_;
  NodeId next_node_ = 0;
  EdgeId next_edge_ = 0;
};

}  // namespace snx
