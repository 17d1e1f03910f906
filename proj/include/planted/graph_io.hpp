#pragma once

#include <iosfwd>
#include <string>

#include "planted/graph.hpp"

#include <json.hpp>

namespace planted {

// Edge-list text format: header "n m", then m lines "i j" (1-based, i<j,
// sorted). Canonical writer, so write(read(s)) == s.
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);
std::string to_edge_list(const Graph& g);
Graph graph_from_edge_list(const std::string& text);

// JSON variant {"n": n, "edges": [[i,j], ...]} with the same canonical
// ordering.
nlohmann::ordered_json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

Graph load_graph_file(const std::string& path);  // .json or edge-list by content
void save_graph_file(const std::string& path, const Graph& g, bool as_json);

}  // namespace planted
