#include "planted/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace planted {

void write_edge_list(std::ostream& os, const Graph& g) {
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [i, j] : g.edges()) os << i << ' ' << j << '\n';
}

Graph read_edge_list(std::istream& is) {
    int n = 0;
    std::int64_t m = 0;
    if (!(is >> n >> m)) throw std::invalid_argument("edge list: bad header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (std::int64_t e = 0; e < m; ++e) {
        int i = 0, j = 0;
        if (!(is >> i >> j)) throw std::invalid_argument("edge list: truncated");
        edges.emplace_back(i, j);
    }
    return Graph(n, std::move(edges));
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

Graph graph_from_edge_list(const std::string& text) {
    std::istringstream is(text);
    return read_edge_list(is);
}

nlohmann::ordered_json graph_to_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.vertex_count();
    auto& edges = j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
    return j;
}

Graph graph_from_json(const nlohmann::json& j) {
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
    return Graph(n, std::move(edges));
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    // JSON documents start with '{'; everything else is treated as an
    // edge list.
    char first = 0;
    in >> first;
    in.putback(first);
    if (first == '{') {
        nlohmann::json j;
        in >> j;
        return graph_from_json(j);
    }
    return read_edge_list(in);
}

void save_graph_file(const std::string& path, const Graph& g, bool as_json) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write graph file: " + path);
    if (as_json) {
        out << graph_to_json(g).dump(2) << '\n';
    } else {
        write_edge_list(out, g);
    }
}

}  // namespace planted
