#include "snx/network_io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "snx/error.hpp"
#include "snx/text.hpp"

namespace snx {
namespace {

using json = nlohmann::json;

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string string_array(const std::set<std::string>& values) {
  return json(std::vector<std::string>(values.begin(), values.end())).dump();
}

std::set<std::string> parse_string_array(const std::string& text) {
  if (text.empty()) return {};
  const json arr = json::parse(text);
  return arr.get<std::set<std::string>>();
}

std::string format_double(double v) { return fmt::format("{}", v); }

// Node ids in export order; edges reference these positions.
std::map<NodeId, std::size_t> positions(const SocialNetwork& net) {
  std::map<NodeId, std::size_t> pos;
  std::size_t i = 0;
  for (const auto& [id, node] : net.nodes()) pos[id] = i++;
  return pos;
}

}  // namespace

GraphFormat parse_graph_format(std::string_view text) {
  const std::string lowered = fold_case(text);
  if (lowered == "graphml") return GraphFormat::GraphML;
  if (lowered == "json") return GraphFormat::Json;
  if (lowered == "edgelist" || lowered == "tsv") return GraphFormat::EdgeList;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown graph format '{}'", text));
}

GraphFormat graph_format_for(const std::filesystem::path& path) {
  const std::string ext = fold_case(path.extension().string());
  if (ext == ".graphml" || ext == ".xml") return GraphFormat::GraphML;
  if (ext == ".json") return GraphFormat::Json;
  return GraphFormat::EdgeList;
}

void write_graphml(const SocialNetwork& net, std::ostream& out) {
  const auto pos = positions(net);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n"
      << "  <key id=\"attributes\" for=\"node\" attr.name=\"attributes\" attr.type=\"string\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
      << "  <key id=\"method\" for=\"edge\" attr.name=\"method\" attr.type=\"string\"/>\n"
      << "  <key id=\"labels\" for=\"edge\" attr.name=\"labels\" attr.type=\"string\"/>\n"
      << "  <key id=\"cond_prob\" for=\"edge\" attr.name=\"conditional_probability\" attr.type=\"double\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (const auto& [id, node] : net.nodes()) {
    out << "    <node id=\"n" << pos.at(id) << "\">\n"
        << "      <data key=\"name\">" << xml_escape(node.actor.name) << "</data>\n"
        << "      <data key=\"attributes\">" << xml_escape(string_array(node.actor.attributes)) << "</data>\n"
        << "    </node>\n";
  }
  std::size_t i = 0;
  for (const auto& [id, e] : net.edges()) {
    out << "    <edge id=\"e" << i++ << "\" source=\"n" << pos.at(e.a) << "\" target=\"n" << pos.at(e.b) << "\">\n"
        << "      <data key=\"weight\">" << format_double(e.weight) << "</data>\n"
        << "      <data key=\"method\">" << to_string(e.method) << "</data>\n"
        << "      <data key=\"labels\">" << xml_escape(string_array(e.labels)) << "</data>\n";
    if (e.conditional_probability) {
      out << "      <data key=\"cond_prob\">" << format_double(*e.conditional_probability) << "</data>\n";
    }
    out << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

SocialNetwork read_graphml(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorKind::Parse, fmt::format("GraphML: {}", e.what()));
  }
  const auto root = tree.get_child_optional("graphml");
  if (!root) throw Error(ErrorKind::Parse, "GraphML: missing <graphml> root");

  // key id -> attr.name, so foreign files with other key ids still resolve.
  std::map<std::string, std::string> key_names;
  for (const auto& [tag, child] : *root) {
    if (tag != "key") continue;
    const std::string id = child.get<std::string>("<xmlattr>.id", "");
    // '/' as separator: the attribute name itself contains a dot.
    key_names[id] = child.get<std::string>(pt::ptree::path_type("<xmlattr>/attr.name", '/'), id);
  }
  auto data_of = [&key_names](const pt::ptree& element) {
    std::map<std::string, std::string> data;
    for (const auto& [tag, child] : element) {
      if (tag != "data") continue;
      const std::string key = child.get<std::string>("<xmlattr>.key", "");
      auto it = key_names.find(key);
      data[it == key_names.end() ? key : it->second] = child.get_value<std::string>();
    }
    return data;
  };

  const auto graph = root->get_child_optional("graph");
  if (!graph) throw Error(ErrorKind::Parse, "GraphML: missing <graph>");
  SocialNetwork net;
  std::map<std::string, std::string> node_names;
  try {
    for (const auto& [tag, child] : *graph) {
      if (tag != "node") continue;
      const std::string id = child.get<std::string>("<xmlattr>.id");
      auto data = data_of(child);
      Actor actor;
      actor.name = data.count("name") ? data["name"] : data.count("label") ? data["label"] : id;
      actor.attributes = parse_string_array(data["attributes"]);
      node_names[id] = actor.name;
      net.add_actor(std::move(actor));
    }
    for (const auto& [tag, child] : *graph) {
      if (tag != "edge") continue;
      const std::string source = child.get<std::string>("<xmlattr>.source");
      const std::string target = child.get<std::string>("<xmlattr>.target");
      if (!node_names.count(source) || !node_names.count(target)) {
        throw Error(ErrorKind::Parse, fmt::format("GraphML: edge references unknown node {}", !node_names.count(source) ? source : target));
      }
      auto data = data_of(child);
      const double weight = data.count("weight") ? std::stod(data["weight"]) : 1.0;
      const Method method = data.count("method") ? parse_method(data["method"]) : Method::Given;
      std::optional<double> cond;
      if (data.count("conditional_probability")) cond = std::stod(data["conditional_probability"]);
      const EdgeId eid = net.add_relation(node_names[source], node_names[target], weight, method, cond);
      const auto stored = parse_string_array(data["labels"]);
      if (data.count("labels") && stored != net.edge(eid).labels) {
        throw Error(ErrorKind::Parse, fmt::format("GraphML: edge {}-{} labels disagree with node attributes", source, target));
      }
    }
  } catch (const pt::ptree_error& e) {
    throw Error(ErrorKind::Parse, fmt::format("GraphML: {}", e.what()));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, fmt::format("GraphML: bad label array: {}", e.what()));
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::Parse, fmt::format("GraphML: bad number: {}", e.what()));
  }
  net.attach_labels();
  return net;
}

void write_json(const SocialNetwork& net, std::ostream& out) {
  const auto pos = positions(net);
  json nodes = json::array();
  for (const auto& [id, node] : net.nodes()) {
    nodes.push_back({{"id", pos.at(id)},
                     {"name", node.actor.name},
                     {"labels", std::vector<std::string>(node.actor.attributes.begin(), node.actor.attributes.end())}});
  }
  json edges = json::array();
  for (const auto& [id, e] : net.edges()) {
    json edge = {{"source", pos.at(e.a)},
                 {"target", pos.at(e.b)},
                 {"weight", e.weight},
                 {"method", to_string(e.method)},
                 {"labels", std::vector<std::string>(e.labels.begin(), e.labels.end())}};
    if (e.conditional_probability) edge["conditional_probability"] = *e.conditional_probability;
    edges.push_back(std::move(edge));
  }
  out << json{{"directed", false}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}}.dump(2) << "\n";
}

SocialNetwork read_json(std::istream& in) {
  SocialNetwork net;
  try {
    const json root = json::parse(in);
    std::map<std::size_t, std::string> names;
    for (const auto& n : root.at("nodes")) {
      Actor actor{n.at("name").get<std::string>(), n.value("labels", std::set<std::string>{})};
      names[n.at("id").get<std::size_t>()] = actor.name;
      net.add_actor(std::move(actor));
    }
    for (const auto& e : root.at("edges")) {
      const auto source = e.at("source").get<std::size_t>();
      const auto target = e.at("target").get<std::size_t>();
      if (!names.count(source) || !names.count(target)) {
        throw Error(ErrorKind::Parse, "JSON graph: edge references unknown node");
      }
      std::optional<double> cond;
      if (e.contains("conditional_probability")) cond = e.at("conditional_probability").get<double>();
      net.add_relation(names[source], names[target], e.value("weight", 1.0), parse_method(e.value("method", "given")), cond);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, fmt::format("JSON graph: {}", e.what()));
  }
  net.attach_labels();
  return net;
}

void write_edgelist(const SocialNetwork& net, std::ostream& out) {
  for (const auto& [id, e] : net.edges()) {
    out << fmt::format("{}\t{}\t{}\n", net.node(e.a).actor.name, net.node(e.b).actor.name, e.weight);
  }
}

SocialNetwork read_edgelist(std::istream& in) {
  SocialNetwork net;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;
    std::vector<std::string> cols;
    std::stringstream fields(line);
    for (std::string col; std::getline(fields, col, '\t');) cols.push_back(col);
    if (cols.size() < 2) throw Error(ErrorKind::Parse, fmt::format("edge list line {}: expected two tab-separated names", line_no));
    for (std::size_t i = 0; i < 2; ++i) {
      if (normalize_name(cols[i]).empty()) throw Error(ErrorKind::Parse, fmt::format("edge list line {}: empty name", line_no));
      if (!net.find(cols[i])) net.add_actor(Actor{cols[i], {}});
    }
    double weight = 1.0;
    if (cols.size() > 2 && !cols[2].empty()) {
      try {
        weight = std::stod(cols[2]);
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, fmt::format("edge list line {}: bad weight '{}'", line_no, cols[2]));
      }
    }
    try {
      net.add_relation(cols[0], cols[1], weight, Method::Given);
    } catch (const Error& e) {
      throw Error(e.kind(), fmt::format("edge list line {}: {}", line_no, e.what()));
    }
  }
  return net;
}

void save_network(const SocialNetwork& net, const std::filesystem::path& path, GraphFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write {}", path.string()));
  switch (format) {
    case GraphFormat::GraphML: write_graphml(net, out); break;
    case GraphFormat::Json: write_json(net, out); break;
    case GraphFormat::EdgeList: write_edgelist(net, out); break;
  }
}

SocialNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open {}", path.string()));
  try {
    switch (graph_format_for(path)) {
      case GraphFormat::GraphML: return read_graphml(in);
      case GraphFormat::Json: return read_json(in);
      case GraphFormat::EdgeList: return read_edgelist(in);
    }
  } catch (const Error& e) {
    throw Error(e.kind(), fmt::format("{}: {}", path.string(), e.what()));
  }
  return {};
}

}  // namespace snx
