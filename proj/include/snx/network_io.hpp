#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "snx/network.hpp"

namespace snx {

enum class GraphFormat { GraphML, Json, EdgeList };

GraphFormat parse_graph_format(std::string_view text);
/// .graphml/.xml -> GraphML, .json -> Json, anything else -> EdgeList.
GraphFormat graph_format_for(const std::filesystem::path& path);

void write_graphml(const SocialNetwork& net, std::ostream& out);
void write_json(const SocialNetwork& net, std::ostream& out);
/// One "name<TAB>name<TAB>weight" line per edge.
void write_edgelist(const SocialNetwork& net, std::ostream& out);

/// Nodes take their name from a data element keyed "name" (or "label"),
/// falling back to the node id. Edges without weight default to 1.
SocialNetwork read_graphml(std::istream& in);
SocialNetwork read_json(std::istream& in);
/// Blank lines and '#' comments are skipped; an optional third column is the
/// weight.
SocialNetwork read_edgelist(std::istream& in);

void save_network(const SocialNetwork& net, const std::filesystem::path& path, GraphFormat format);
SocialNetwork load_network(const std::filesystem::path& path);

}  // namespace snx
