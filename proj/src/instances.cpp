#include "spinmap/instances.hpp"

#include "spinmap/rng.hpp"

#include <numeric>

namespace spinmap {

namespace {

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges.size());
  for (auto [u, v] : g.edges) edges.emplace_back(perm[u], perm[v]);
  return Graph::make(g.n, std::move(edges));
}

}  // namespace

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::make(n, std::move(e));
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::make(n, std::move(e));
}

std::pair<Graph, Graph> four_vertex_pair() {
  Graph g1 = Graph::make(4, {{1, 0}, {1, 2}, {1, 3}, {2, 3}});
  Graph g2 = Graph::make(4, {{0, 1}, {0, 2}, {0, 3}, {2, 3}});
  return {std::move(g1), std::move(g2)};
}

std::pair<Graph, Graph> five_cycle_pair() {
  Graph g1 = cycle_graph(5);
  Graph g2 = Graph::make(5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}});
  return {std::move(g1), std::move(g2)};
}

std::pair<Graph, Graph> seven_vertex_noniso_pair() {
  Graph c7 = cycle_graph(7);
  std::vector<std::pair<int, int>> e1 = c7.edges, e2 = c7.edges;
  e1.emplace_back(0, 2);
  e2.emplace_back(0, 3);
  return {Graph::make(7, std::move(e1)), Graph::make(7, std::move(e2))};
}

std::pair<Graph, Graph> six_vertex_pair() {
  Graph g1 = Graph::make(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}});
  Graph g2 = relabel(g1, {3, 0, 4, 1, 5, 2});
  return {std::move(g1), std::move(g2)};
}

std::pair<Graph, Graph> cube_minus_edge_pair() {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < 8; ++u)
    for (int b = 0; b < 3; ++b)
      if (int v = u ^ (1 << b); u < v) e.emplace_back(u, v);
  std::erase(e, std::pair<int, int>{0, 1});
  Graph g1 = Graph::make(8, std::move(e));
  Graph g2 = relabel(g1, {5, 2, 7, 0, 3, 6, 1, 4});
  return {std::move(g1), std::move(g2)};
}

Graph petersen_graph() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph::make(10, std::move(e));
}

Graph pentagonal_prism_graph() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 1) % 5);
  }
  return Graph::make(10, std::move(e));
}

std::pair<Graph, Graph> srg16_pair() {
  // Vertices are (a, b) in Z4 x Z4, index 4a + b.
  std::vector<std::pair<int, int>> shk, rook;
  for (int u = 0; u < 16; ++u)
    for (int v = u + 1; v < 16; ++v) {
      const int da = ((u >> 2) - (v >> 2) + 4) % 4;
      const int db = ((u & 3) - (v & 3) + 4) % 4;
      const bool s = (db == 0 && (da == 1 || da == 3)) || (da == 0 && (db == 1 || db == 3)) ||
                     (da == 1 && db == 1) || (da == 3 && db == 3);
      if (s) shk.emplace_back(u, v);
      if (da == 0 || db == 0) rook.emplace_back(u, v);
    }
  return {Graph::make(16, std::move(shk)), Graph::make(16, std::move(rook))};
}

Graph random_graph(int n, std::uint64_t seed) {
  auto g = rng::engine(seed, 0x6772);
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng::uniform01(g) < 0.5) e.emplace_back(u, v);
  return Graph::make(n, std::move(e));
}

Graph random_relabel(const Graph& g, std::uint64_t seed) {
  auto r = rng::engine(seed, 0x7065);
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = g.n - 1; i > 0; --i) std::swap(perm[i], perm[rng::uniform_int(r, i + 1)]);
  return relabel(g, perm);
}

}  // namespace spinmap
