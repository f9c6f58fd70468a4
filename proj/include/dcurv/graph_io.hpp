#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dcurv/graph.hpp"

namespace dcurv {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// graph6: header N(n), then the upper-triangle adjacency bits taken column by
// column -- x(0,1), x(0,2), x(1,2), x(0,3), ... -- packed 6 per byte, MSB
// first, each byte offset by 63. Printable range is 63..126.
inline Graph parse_graph6(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  if (line.empty()) throw parse_error("graph6: empty input");
  if (line.substr(0, 10) == ">>graph6<<") line.remove_prefix(10);

  for (char c : line)
    if (c < 63 || c > 126) throw parse_error("graph6: character out of range 63..126");

  std::size_t pos = 0;
  long long n = 0;
  if (line[0] != 126) {
    n = line[0] - 63;
    pos = 1;
  } else if (line.size() >= 4 && line[1] != 126) {
    n = (static_cast<long long>(line[1] - 63) << 12) | (static_cast<long long>(line[2] - 63) << 6) |
        static_cast<long long>(line[3] - 63);
    pos = 4;
  } else {
    throw parse_error("graph6: unsupported or truncated header");
  }
  if (n < 1) throw parse_error("graph6: vertex count must be >= 1");

  const long long nbits = n * (n - 1) / 2;
  const std::size_t need = static_cast<std::size_t>((nbits + 5) / 6);
  if (line.size() - pos != need)
    throw parse_error("graph6: body length " + std::to_string(line.size() - pos) + ", expected " +
                      std::to_string(need));

  std::vector<Edge> edges;
  long long bit = 0;
  for (int col = 1; col < n; ++col) {
    for (int row = 0; row < col; ++row, ++bit) {
      int byte = line[pos + static_cast<std::size_t>(bit / 6)] - 63;
      if ((byte >> (5 - bit % 6)) & 1) edges.emplace_back(row, col);
    }
  }
  return Graph::from_edge_list(static_cast<int>(n), edges);
}

inline std::string serialize_graph6(const Graph& g) {
  const int n = g.vertex_count();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  } else {
    throw parse_error("graph6: vertex count above 258047 not supported");
  }
  int acc = 0, filled = 0;
  for (int col = 1; col < n; ++col) {
    for (int row = 0; row < col; ++row) {
      acc = (acc << 1) | (g.has_edge(row, col) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

// First line n, then one "u v" line per edge.
inline std::string serialize_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.vertex_count() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

inline Graph parse_edge_list(std::string_view text) {
  std::istringstream is{std::string(text)};
  long long n = 0;
  if (!(is >> n)) throw parse_error("edge list: missing vertex count");
  if (n < 1) throw parse_error("edge list: vertex count must be >= 1");
  std::vector<Edge> edges;
  long long u, v;
  while (is >> u) {
    if (!(is >> v)) throw parse_error("edge list: dangling endpoint");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  try {
    return Graph::from_edge_list(static_cast<int>(n), edges);
  } catch (const graph_error& e) {
    throw parse_error(std::string("edge list: ") + e.what());
  }
}

inline std::string serialize_dot(const Graph& g) {
  std::ostringstream os;
  os << "graph G {\n";
  for (int v = 0; v < g.vertex_count(); ++v) os << "  " << v << ";\n";
  for (const auto& [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

enum class GraphFormat { Graph6, EdgeList, Dot };

inline GraphFormat parse_format(const std::string& name) {
  if (name == "graph6" || name == "g6") return GraphFormat::Graph6;
  if (name == "edge_list" || name == "el") return GraphFormat::EdgeList;
  if (name == "dot") return GraphFormat::Dot;
  throw parse_error("unknown format: " + name);
}

inline std::string serialize(const Graph& g, GraphFormat f) {
  switch (f) {
    case GraphFormat::Graph6:
      return serialize_graph6(g) + "\n";
    case GraphFormat::EdgeList:
      return serialize_edge_list(g);
    case GraphFormat::Dot:
      return serialize_dot(g);
  }
  throw parse_error("unknown format");
}

// Sniff: a leading bare integer means edge list, anything else graph6.
inline Graph read_graph(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
  std::size_t j = i;
  while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
  bool integer_line = j > i && (j == text.size() || text[j] == '\n' || text[j] == '\r' ||
                                text[j] == ' ' || text[j] == '\t');
  if (integer_line) return parse_edge_list(text.substr(i));
  auto eol = text.find('\n', i);
  return parse_graph6(text.substr(i, eol == std::string_view::npos ? text.size() - i : eol - i));
}

}  // namespace dcurv
