#include "snx/network.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include <fmt/format.h>

#include "snx/error.hpp"
#include "snx/text.hpp"

namespace snx {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::SRS: return "srs";
    case Method::USR: return "usr";
    case Method::ARS: return "ars";
    case Method::Given: return "given";
  }
  return "given";
}

Method parse_method(std::string_view text) {
  const std::string lowered = fold_case(text);
  if (lowered == "srs") return Method::SRS;
  if (lowered == "usr" || lowered == "urs") return Method::USR;
  if (lowered == "ars" || lowered == "asr") return Method::ARS;
  if (lowered == "given") return Method::Given;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown method '{}'", text));
}

NodeId SocialNetwork::add_actor(Actor actor) {
  std::string key = normalize_name(actor.name);
  if (key.empty()) throw Error(ErrorKind::InvalidArgument, "actor name is empty");
  if (actor_map_.count(key) != 0) {
    throw Error(ErrorKind::DuplicateActor, fmt::format("actor '{}' is already mapped to a node", actor.name));
  }
  const NodeId id = next_node_++;
  for (const auto& z : actor.attributes) node_labels_[z].insert(id);
  actor_map_.emplace(std::move(key), id);
  nodes_.emplace(id, Node{id, std::move(actor)});
  return id;
}

void SocialNetwork::remove_actor(std::string_view name) {
  const auto it = actor_map_.find(normalize_name(name));
  if (it == actor_map_.end()) throw Error(ErrorKind::UnknownActor, fmt::format("unknown actor '{}'", name));
  const NodeId id = it->second;
  for (auto e = edges_.begin(); e != edges_.end();) {
    if (e->second.a == id || e->second.b == id) {
      edge_keys_.erase(EdgeKey{e->second.a, e->second.b, e->second.method, e->second.labels});
      e = edges_.erase(e);
    } else {
      ++e;
    }
  }
  nodes_.erase(id);
  actor_map_.erase(it);
  attach_labels();
}

EdgeId SocialNetwork::add_relation(std::string_view a, std::string_view b, double weight, Method method,
                                   std::optional<double> conditional_probability) {
  const auto na = find(a);
  const auto nb = find(b);
  if (!na || !nb) throw Error(ErrorKind::UnknownActor, fmt::format("unknown actor '{}'", na ? b : a));
  if (*na == *nb) throw Error(ErrorKind::SelfLoop, fmt::format("self-loop on '{}'", a));
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("relation weight {} outside [0, 1]", weight));
  }
  const NodeId lo = std::min(*na, *nb);
  const NodeId hi = std::max(*na, *nb);
  const auto& za = nodes_.at(lo).actor.attributes;
  const auto& zb = nodes_.at(hi).actor.attributes;
  std::set<std::string> shared;
  std::set_intersection(za.begin(), za.end(), zb.begin(), zb.end(), std::inserter(shared, shared.end()));

  EdgeKey key{lo, hi, method, shared};
  if (auto it = edge_keys_.find(key); it != edge_keys_.end()) {
    Edge& existing = edges_.at(it->second);
    if (weight > existing.weight) {
      existing.weight = weight;
      existing.conditional_probability = conditional_probability;
    }
    return existing.id;
  }
  const EdgeId id = next_edge_++;
  for (const auto& z : shared) edge_labels_[z].insert(id);
  edges_.emplace(id, Edge{id, lo, hi, weight, method, shared, conditional_probability});
  edge_keys_.emplace(std::move(key), id);
  return id;
}

SocialNetwork& SocialNetwork::attach_labels() {
  node_labels_.clear();
  edge_labels_.clear();
  for (const auto& [id, node] : nodes_) {
    for (const auto& z : node.actor.attributes) node_labels_[z].insert(id);
  }
  for (const auto& [id, edge] : edges_) {
    for (const auto& z : edge.labels) edge_labels_[z].insert(id);
  }
  return *this;
}

std::optional<NodeId> SocialNetwork::find(std::string_view name) const {
  auto it = actor_map_.find(normalize_name(name));
  if (it == actor_map_.end()) return std::nullopt;
  return it->second;
}

const Node& SocialNetwork::node(NodeId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorKind::UnknownActor, fmt::format("no node {}", id));
  return it->second;
}

const Edge& SocialNetwork::edge(EdgeId id) const {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw Error(ErrorKind::InvalidArgument, fmt::format("no edge {}", id));
  return it->second;
}

void SocialNetwork::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); };
  if (actor_map_.size() != nodes_.size()) fail("actor map and node set differ in size");
  for (const auto& [key, id] : actor_map_) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) fail(fmt::format("actor '{}' maps to missing node {}", key, id));
    if (normalize_name(it->second.actor.name) != key) fail(fmt::format("node {} name does not match its key", id));
  }
  for (const auto& [id, e] : edges_) {
    if (nodes_.count(e.a) == 0 || nodes_.count(e.b) == 0) fail(fmt::format("edge {} has a dangling endpoint", id));
    if (e.a == e.b) fail(fmt::format("edge {} is a self-loop", id));
    const auto& za = nodes_.at(e.a).actor.attributes;
    const auto& zb = nodes_.at(e.b).actor.attributes;
    for (const auto& z : e.labels) {
      if (za.count(z) == 0 || zb.count(z) == 0) fail(fmt::format("edge {} label '{}' not shared by endpoints", id, z));
    }
  }
  for (const auto& [z, ids] : node_labels_) {
    for (NodeId id : ids) {
      auto it = nodes_.find(id);
      if (it == nodes_.end() || it->second.actor.attributes.count(z) == 0) {
        fail(fmt::format("node label '{}' not backed by node {}", z, id));
      }
    }
  }
  for (const auto& [z, ids] : edge_labels_) {
    for (EdgeId id : ids) {
      auto it = edges_.find(id);
      if (it == edges_.end() || it->second.labels.count(z) == 0) {
        fail(fmt::format("edge label '{}' not backed by edge {}", z, id));
      }
    }
  }
}

bool operator==(const SocialNetwork& x, const SocialNetwork& y) {
  if (x.nodes_.size() != y.nodes_.size() || x.edges_.size() != y.edges_.size()) return false;
  auto same_node = [](const auto& p, const auto& q) {
    return p.second.actor.name == q.second.actor.name && p.second.actor.attributes == q.second.actor.attributes;
  };
  if (!std::equal(x.nodes_.begin(), x.nodes_.end(), y.nodes_.begin(), same_node)) return false;
  auto ex = x.edges_.begin();
  auto ey = y.edges_.begin();
  for (; ex != x.edges_.end(); ++ex, ++ey) {
    const Edge& a = ex->second;
    const Edge& b = ey->second;
    if (x.nodes_.at(a.a).actor.name != y.nodes_.at(b.a).actor.name) return false;
    if (x.nodes_.at(a.b).actor.name != y.nodes_.at(b.b).actor.name) return false;
    if (a.weight != b.weight || a.method != b.method || a.labels != b.labels) return false;
    if (a.conditional_probability != b.conditional_probability) return false;
  }
  return true;
}

}  // namespace snx
