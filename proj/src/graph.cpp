#include "spinmap/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace spinmap {

Graph Graph::make(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  Graph g;
  g.n = n;
  g.adj.assign(static_cast<std::size_t>(n) * n, 0);
  g.deg.assign(n, 0);
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (auto [u, v] : edges) {
    g.adj[static_cast<std::size_t>(u) * n + v] = 1;
    g.adj[static_cast<std::size_t>(v) * n + u] = 1;
    ++g.deg[u];
    ++g.deg[v];
  }
  g.edges = std::move(edges);
  return g;
}

bool VertexMapping::complete() const {
  if (to.empty()) return false;
  std::vector<char> seen(to.size(), 0);
  for (int t : to) {
    if (t < 0 || t >= static_cast<int>(to.size()) || seen[t]) return false;
    seen[t] = 1;
  }
  return true;
}

std::vector<std::pair<int, int>> VertexMapping::pairs() const {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < static_cast<int>(to.size()); ++i)
    if (to[i] >= 0) p.emplace_back(i, to[i]);
  return p;
}

namespace {

// Pulls the next content line, skipping blanks and '#' comments.
bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    if (line[b] == '#') continue;
    return true;
  }
  return false;
}

Graph parse_block(std::istream& in, int& lineno, bool* hit_separator) {
  std::string line;
  if (!next_line(in, line, lineno)) throw ParseError("graph: missing header line");
  std::istringstream hdr(line);
  int n = 0, m = 0;
  if (!(hdr >> n >> m)) throw ParseError("graph: bad header at line " + std::to_string(lineno));
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int k = 0; k < m; ++k) {
    if (!next_line(in, line, lineno))
      throw ParseError("graph: expected " + std::to_string(m) + " edges, got " +
                       std::to_string(k));
    std::istringstream es(line);
    int u = 0, v = 0;
    if (!(es >> u >> v)) throw ParseError("graph: bad edge at line " + std::to_string(lineno));
    edges.emplace_back(u, v);
  }
  if (hit_separator) {
    *hit_separator = false;
    if (next_line(in, line, lineno)) {
      if (line.find("---") == std::string::npos)
        throw ParseError("pair: expected '---' separator at line " + std::to_string(lineno));
      *hit_separator = true;
    }
  }
  try {
    return Graph::make(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Graph parse_graph(std::istream& in) {
  int lineno = 0;
  return parse_block(in, lineno, nullptr);
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

std::pair<Graph, Graph> parse_graph_pair(std::istream& in) {
  int lineno = 0;
  bool sep = false;
  Graph g1 = parse_block(in, lineno, &sep);
  if (!sep) throw ParseError("pair: missing '---' separator");
  Graph g2 = parse_block(in, lineno, nullptr);
  return {std::move(g1), std::move(g2)};
}

std::pair<Graph, Graph> parse_graph_pair_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("pair: cannot open " + path);
  return parse_graph_pair(in);
}

std::string format_graph_pair(const Graph& g1, const Graph& g2,
                              const std::vector<std::string>& header_comments) {
  std::ostringstream out;
  for (const auto& c : header_comments) out << "# " << c << '\n';
  out << format_graph(g1) << "---\n" << format_graph(g2);
  return out.str();
}

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> d = g.deg;
  std::sort(d.begin(), d.end(), std::greater<int>());
  return d;
}

bool verify_mapping(const Graph& g1, const Graph& g2, const VertexMapping& m) {
  if (g1.n != g2.n) return false;
  if (static_cast<int>(m.to.size()) != g1.n || !m.complete())
    throw std::invalid_argument("verify_mapping: mapping is not a complete bijection");
  for (int i = 0; i < g1.n; ++i)
    for (int k = i + 1; k < g1.n; ++k)
      if (g1.adjacent(i, k) != g2.adjacent(m.to[i], m.to[k])) return false;
  return true;
}

namespace {

bool extend(const Graph& g1, const Graph& g2, std::vector<int>& to, std::vector<char>& used,
            int i) {
  if (i == g1.n) return true;
  for (int j = 0; j < g2.n; ++j) {
    if (used[j] || g1.deg[i] != g2.deg[j]) continue;
    bool ok = true;
    for (int k = 0; k < i; ++k)
      if (g1.adjacent(i, k) != g2.adjacent(j, to[k])) {
        ok = false;
        break;
      }
    if (!ok) continue;
    to[i] = j;
    used[j] = 1;
    if (extend(g1, g2, to, used, i + 1)) return true;
    used[j] = 0;
  }
  to[i] = -1;
  return false;
}

}  // namespace

std::optional<VertexMapping> brute_force_isomorphism(const Graph& g1, const Graph& g2,
                                                     int max_n) {
  if (g1.n > max_n || g2.n > max_n)
    throw std::invalid_argument("brute_force_isomorphism: n exceeds guard (" +
                                std::to_string(max_n) + ")");
  if (g1.n != g2.n || g1.m() != g2.m()) return std::nullopt;
  if (degree_sequence(g1) != degree_sequence(g2)) return std::nullopt;
  // Ascending candidate order at each depth makes the first hit the
  // lexicographically smallest mapping vector.
  VertexMapping m;
  m.to.assign(g1.n, -1);
  std::vector<char> used(g1.n, 0);
  if (g1.n == 0) return m;
  if (extend(g1, g2, m.to, used, 0)) return m;
  return std::nullopt;
}

}  // namespace spinmap
