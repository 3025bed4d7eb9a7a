#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pushing/graph.hpp"

// Small named graph families used by the tests, the CLI and the experiments.
namespace pushing::families {

inline Graph empty(std::size_t n) { return Graph(n); }

inline Graph path(std::size_t n) {
  std::vector<Edge> es;
  for (std::size_t i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph(n, es);
}

inline Graph cycle(std::size_t n) {
  if (n < 3) throw GraphError("cycle needs at least 3 vertices");
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph(n, es);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph(n, es);
}

/// Parts {0..a-1} and {a..a+b-1}.
inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> es;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) es.emplace_back(i, a + j);
  return Graph(a + b, es);
}

/// K_{d,d} with the matching i -- d+i removed.
inline Graph crown(std::size_t d) {
  std::vector<Edge> es;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) es.emplace_back(i, d + j);
  return Graph(2 * d, es);
}

/// Center 0 with `leaves` pendant vertices.
inline Graph star(std::size_t leaves) { return complete_bipartite(1, leaves); }

/// GP(n,k): outer cycle 0..n-1, spokes i -- n+i, inner edges n+i -- n+(i+k)%n.
inline Graph generalized_petersen(std::size_t n, std::size_t k) {
  if (n < 3 || k == 0 || 2 * k >= n)
    throw GraphError("generalized_petersen: need 1 <= k < n/2");
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) {
    es.emplace_back(i, (i + 1) % n);
    es.emplace_back(i, n + i);
    es.emplace_back(n + i, n + (i + k) % n);
  }
  return Graph(2 * n, es);
}

inline Graph petersen() { return generalized_petersen(5, 2); }
inline Graph prism() { return generalized_petersen(3, 1); }
inline Graph mobius_kantor() { return generalized_petersen(8, 3); }
inline Graph desargues() { return generalized_petersen(10, 3); }

inline Graph hypercube(std::size_t dim) {
  const std::size_t n = std::size_t{1} << dim;
  std::vector<Edge> es;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t b = 0; b < dim; ++b) {
      const std::size_t w = v ^ (std::size_t{1} << b);
      if (v < w) es.emplace_back(v, w);
    }
  return Graph(n, es);
}

/// Cartesian product C_a x C_b; vertex (i,j) has index i*b + j.
inline Graph torus(std::size_t a, std::size_t b) {
  if (a < 3 || b < 3) throw GraphError("torus needs cycles of length >= 3");
  std::vector<Edge> es;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) {
      es.emplace_back(i * b + j, i * b + (j + 1) % b);
      es.emplace_back(i * b + j, ((i + 1) % a) * b + j);
    }
  return Graph(a * b, es);
}

/// Disjoint union; vertices of `h` are shifted by g.order().
inline Graph disjoint_union(const Graph& g, const Graph& h) {
  std::vector<Edge> es = g.edges();
  for (const Edge& e : h.edges()) es.emplace_back(e.u + g.order(), e.v + g.order());
  return Graph(g.order() + h.order(), es);
}

}  // namespace pushing::families
