#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pushing {

using Vertex = std::size_t;

/// Undirected edge stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  auto operator<=>(const Edge&) const = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the text parsers. `position` is a byte offset for graph6 and a
/// 1-based line number for edge lists.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
/// Immutable after construction.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n) : adj_(n) {}

  /// Rejects self-loops, out-of-range endpoints and duplicate edges.
  Graph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
    for (const Edge& e : edges) {
      if (e.u >= n || e.v >= n)
        throw GraphError("edge endpoint out of range");
      if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& nbrs : adj_) {
      std::sort(nbrs.begin(), nbrs.end());
      if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
        throw GraphError("duplicate edge");
    }
    m_ = edges.size();
  }

  Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
      : Graph(n, to_edges(edges)) {}

  std::size_t order() const noexcept { return adj_.size(); }
  std::size_t size() const noexcept { return m_; }

  std::span<const Vertex> neighbors(Vertex u) const { return adj_[u]; }
  std::size_t degree(Vertex u) const { return adj_[u].size(); }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& nbrs = adj_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& nbrs : adj_) d = std::max(d, nbrs.size());
    return d;
  }

  std::size_t min_degree() const {
    if (adj_.empty()) return 0;
    std::size_t d = std::numeric_limits<std::size_t>::max();
    for (const auto& nbrs : adj_) d = std::min(d, nbrs.size());
    return d;
  }

  bool is_regular() const { return min_degree() == max_degree(); }

  /// Edges in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < adj_.size(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// Subgraph induced by `vertices`, relabelled to 0..k-1 in the given order.
  Graph induced(std::span<const Vertex> vertices) const {
    std::vector<std::size_t> index(order(), kAbsent);
    for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = i;
    std::vector<Edge> es;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (Vertex w : adj_[vertices[i]])
        if (index[w] != kAbsent && i < index[w]) es.emplace_back(i, index[w]);
    return Graph(vertices.size(), es);
  }

  bool operator==(const Graph&) const = default;

 private:
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

  static std::vector<Edge> to_edges(std::initializer_list<std::pair<Vertex, Vertex>> list) {
    std::vector<Edge> out;
    for (auto [a, b] : list) {
      if (a == b) throw GraphError("self-loop at vertex " + std::to_string(a));
      out.emplace_back(a, b);
    }
    return out;
  }

  std::vector<std::vector<Vertex>> adj_;
  std::size_t m_ = 0;
};

// ---------------------------------------------------------------------------
// graph6 (short form only, n <= 62)

namespace detail {
constexpr int kGraph6Bias = 63;
constexpr std::size_t kGraph6MaxOrder = 62;
}  // namespace detail

inline Graph parse_graph6(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  std::size_t offset = 0;
  constexpr std::string_view header = ">>graph6<<";
  if (line.starts_with(header)) offset = header.size();
  if (offset >= line.size()) throw ParseError("graph6: empty record", offset);

  const auto byte_value = [&](std::size_t pos) {
    const auto c = static_cast<unsigned char>(line[pos]);
    if (c < 63 || c > 126)
      throw ParseError("graph6: byte " + std::to_string(pos) + " outside 63..126", pos);
    return static_cast<unsigned>(c) - detail::kGraph6Bias;
  };

  const unsigned n_code = byte_value(offset);
  if (n_code == 63)
    throw ParseError("graph6: long-form header (n > 62) is not supported", offset);
  const std::size_t n = n_code;
  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t body = (bits + 5) / 6;
  const std::size_t begin = offset + 1;
  if (line.size() < begin + body)
    throw ParseError("graph6: record too short for n=" + std::to_string(n), line.size());
  if (line.size() > begin + body)
    throw ParseError("graph6: trailing bytes after record", begin + body);

  std::vector<Edge> edges;
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      const std::size_t pos = begin + k / 6;
      if ((byte_value(pos) >> (5 - k % 6)) & 1u) edges.emplace_back(i, j);
    }
  }
  for (; k < body * 6; ++k) {
    const std::size_t pos = begin + k / 6;
    if ((byte_value(pos) >> (5 - k % 6)) & 1u)
      throw ParseError("graph6: nonzero padding bit", pos);
  }
  return Graph(n, edges);
}

inline std::string encode_graph6(const Graph& g) {
  const std::size_t n = g.order();
  if (n > detail::kGraph6MaxOrder)
    throw GraphError("graph6 encoding supports at most 62 vertices");
  std::string out(1, static_cast<char>(n + detail::kGraph6Bias));
  unsigned acc = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1u : 0u);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + detail::kGraph6Bias));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + detail::kGraph6Bias));
  return out;
}

// ---------------------------------------------------------------------------
// Edge lists: first line n, then one "u v" per line.

struct ParsedEdgeList {
  Graph graph;
  std::size_t duplicate_edges = 0;
};

inline ParsedEdgeList parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!n) {
      long long value = -1;
      std::string rest;
      if (!(fields >> value) || value < 0 || (fields >> rest))
        throw ParseError("edge list line " + std::to_string(line_no) + ": expected vertex count", line_no);
      n = static_cast<std::size_t>(value);
      continue;
    }
    long long a = -1, b = -1;
    std::string rest;
    if (!(fields >> a >> b) || (fields >> rest))
      throw ParseError("edge list line " + std::to_string(line_no) + ": expected \"u v\"", line_no);
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= *n || static_cast<std::size_t>(b) >= *n)
      throw ParseError("edge list line " + std::to_string(line_no) + ": vertex out of range", line_no);
    if (a == b)
      throw ParseError("edge list line " + std::to_string(line_no) + ": self-loop", line_no);
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  if (!n) throw ParseError("edge list: missing vertex count", line_no);

  std::sort(edges.begin(), edges.end());
  const auto unique_end = std::unique(edges.begin(), edges.end());
  const auto duplicates = static_cast<std::size_t>(std::distance(unique_end, edges.end()));
  edges.erase(unique_end, edges.end());
  return {Graph(*n, edges), duplicates};
}

inline std::string encode_edge_list(const Graph& g) {
  std::string out = std::to_string(g.order()) + "\n";
  for (const Edge& e : g.edges()) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Structural queries

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Multi-source BFS; unreachable vertices get kUnreachable.
inline std::vector<std::size_t> bfs_distances(const Graph& g, std::span<const Vertex> sources) {
  if (sources.empty()) throw GraphError("bfs_distances: empty source set");
  std::vector<std::size_t> dist(g.order(), kUnreachable);
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    if (s >= g.order()) throw GraphError("bfs_distances: source out of range");
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

inline std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
  const Vertex s[] = {source};
  return bfs_distances(g, s);
}

/// Connected components, each sorted, ordered by smallest vertex.
inline std::vector<std::vector<Vertex>> components(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  std::vector<bool> seen(g.order(), false);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (Vertex w : g.neighbors(comp[head]))
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const Graph& g) { return components(g).size() <= 1; }

/// A graph is nice when no component has exactly two vertices.
inline bool is_nice(const Graph& g) {
  for (const auto& comp : components(g))
    if (comp.size() == 2) return false;
  return true;
}

/// Shortest cycle length, or nullopt for forests. BFS from every vertex.
inline std::optional<std::size_t> girth(const Graph& g) {
  std::size_t best = kUnreachable;
  std::vector<std::size_t> dist(g.order());
  std::vector<Vertex> parent(g.order());
  std::deque<Vertex> queue;
  for (Vertex root = 0; root < g.order(); ++root) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    dist[root] = 0;
    parent[root] = root;
    queue.assign(1, root);
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      if (2 * dist[u] >= best) break;
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == kUnreachable) return std::nullopt;
  return best;
}

/// Two-coloring with side[v] in {0,1}; valid only if no edge is monochromatic.
struct Bipartition {
  std::vector<std::uint8_t> side;
};

inline std::optional<Bipartition> bipartition(const Graph& g) {
  Bipartition b{std::vector<std::uint8_t>(g.order(), 2)};
  for (const auto& comp : components(g)) {
    const auto dist = bfs_distances(g, comp.front());
    for (Vertex v : comp) b.side[v] = static_cast<std::uint8_t>(dist[v] % 2);
  }
  for (const Edge& e : g.edges())
    if (b.side[e.u] == b.side[e.v]) return std::nullopt;
  return b;
}

struct StructureReport {
  std::size_t order = 0;
  std::size_t size = 0;
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  bool regular = false;
  std::optional<Bipartition> bipartition;
  bool connected = false;
  bool nice = false;
  std::optional<std::size_t> girth;
};

inline StructureReport structure_report(const Graph& g) {
  StructureReport r;
  r.order = g.order();
  r.size = g.size();
  r.min_degree = g.min_degree();
  r.max_degree = g.max_degree();
  r.regular = g.is_regular();
  r.bipartition = pushing::bipartition(g);
  r.connected = is_connected(g);
  r.nice = is_nice(g);
  r.girth = pushing::girth(g);
  return r;
}

/// True iff g is K_{d,d} for d = its degree.
inline bool is_balanced_complete_bipartite(const Graph& g) {
  const std::size_t n = g.order();
  if (n == 0 || n % 2 != 0 || !g.is_regular() || g.max_degree() != n / 2) return false;
  return bipartition(g).has_value();
}

inline bool is_complete(const Graph& g) {
  const std::size_t n = g.order();
  return n > 0 && g.is_regular() && g.max_degree() == n - 1;
}

}  // namespace pushing
