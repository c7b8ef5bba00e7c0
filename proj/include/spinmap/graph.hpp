#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinmap {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simple undirected graph, no self-loops, no parallel edges.
// Vertices are 0..n-1; adjacency kept as a flat n*n byte matrix.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // normalized u < v, sorted
  std::vector<std::uint8_t> adj;           // row-major n*n, symmetric
  std::vector<int> deg;

  static Graph make(int n, std::vector<std::pair<int, int>> edges);

  bool adjacent(int u, int v) const { return adj[static_cast<std::size_t>(u) * n + v] != 0; }
  int m() const { return static_cast<int>(edges.size()); }
};

// Assignment of G1 vertices to G2 vertices. to[i] == -1 means unassigned;
// complete() requires a bijection.
struct VertexMapping {
  std::vector<int> to;

  bool complete() const;
  std::vector<std::pair<int, int>> pairs() const;  // assigned (i, to[i]) only
};

// Edge-list text format: first non-comment line "n m", then m lines "u v".
// Lines starting with '#' are ignored anywhere.
Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);

// A pair file is two edge-list blocks separated by a line containing "---".
std::pair<Graph, Graph> parse_graph_pair(std::istream& in);
std::pair<Graph, Graph> parse_graph_pair_file(const std::string& path);
std::string format_graph_pair(const Graph& g1, const Graph& g2,
                              const std::vector<std::string>& header_comments = {});

// Sorted nonincreasing.
std::vector<int> degree_sequence(const Graph& g);

// True iff m is a complete bijection preserving adjacency and non-adjacency.
bool verify_mapping(const Graph& g1, const Graph& g2, const VertexMapping& m);

// Exhaustive search restricted to degree classes; returns the
// lexicographically first isomorphism (by the vector to[0..n-1]) or nullopt.
// Refuses n > max_n to keep the factorial blowup bounded.
std::optional<VertexMapping> brute_force_isomorphism(const Graph& g1, const Graph& g2,
                                                     int max_n = 10);

}  // namespace spinmap
