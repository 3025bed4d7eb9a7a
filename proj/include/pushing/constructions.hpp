#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pushing/exact.hpp"
#include "pushing/graph.hpp"
#include "pushing/greedy.hpp"
#include "pushing/scheme.hpp"

namespace pushing {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Color classes X, Y, Z of a proper 3-coloring.
enum Color : std::uint8_t { kX = 0, kY = 1, kZ = 2 };

using Coloring = std::vector<std::uint8_t>;

inline bool is_proper_coloring(const Graph& g, const Coloring& c) {
  if (c.size() != g.order()) return false;
  for (const Edge& e : g.edges())
    if (c[e.u] == c[e.v]) return false;
  return std::all_of(c.begin(), c.end(), [](std::uint8_t x) { return x <= kZ; });
}

inline bool is_cubic(const Graph& g) { return g.min_degree() == 3 && g.max_degree() == 3; }

// ---------------------------------------------------------------------------
// 3-coloring of connected cubic graphs other than K4

namespace detail {

/// Greedy 3-coloring along `order`; vertices in `order` that are already
/// colored keep their color. Returns false if some vertex sees all 3 colors.
inline bool greedy_three_color(const Graph& g, std::span<const Vertex> order, Coloring& c) {
  constexpr std::uint8_t kNone = 3;
  for (Vertex v : order) {
    if (c[v] != kNone) continue;
    std::array<bool, 3> used{};
    for (Vertex w : g.neighbors(v))
      if (c[w] != kNone) used[c[w]] = true;
    const auto it = std::find(used.begin(), used.end(), false);
    if (it == used.end()) return false;
    c[v] = static_cast<std::uint8_t>(it - used.begin());
  }
  return true;
}

inline std::optional<Coloring> reverse_bfs_three_coloring(const Graph& g, Vertex root) {
  Coloring c(g.order(), 3);
  const auto order = reverse_bfs_ordering(g, root);
  if (greedy_three_color(g, order.perm, c)) return c;
  return std::nullopt;
}

/// Lovasz's argument: a root r with non-adjacent neighbors a, b such that
/// G - {a, b} stays connected; color a and b alike, then reverse BFS from r.
inline std::optional<Coloring> lovasz_three_coloring(const Graph& g) {
  const std::size_t n = g.order();
  for (Vertex r = 0; r < n; ++r) {
    const auto nbrs = g.neighbors(r);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        const Vertex a = nbrs[i], b = nbrs[j];
        if (g.adjacent(a, b)) continue;
        std::vector<Vertex> rest;
        for (Vertex v = 0; v < n; ++v)
          if (v != a && v != b) rest.push_back(v);
        const Graph h = g.induced(rest);
        if (!is_connected(h)) continue;
        const auto local_root = static_cast<Vertex>(std::find(rest.begin(), rest.end(), r) - rest.begin());
        const auto local = reverse_bfs_ordering(h, local_root);
        std::vector<Vertex> order;
        order.reserve(rest.size());
        for (Vertex v : local.perm) order.push_back(rest[v]);
        Coloring c(n, 3);
        c[a] = c[b] = kX;
        if (greedy_three_color(g, order, c)) return c;
      }
    }
  }
  return std::nullopt;
}

inline bool backtrack_color(const Graph& g, std::span<const Vertex> order, std::size_t depth,
                            Coloring& c) {
  if (depth == order.size()) return true;
  const Vertex v = order[depth];
  for (std::uint8_t color = 0; color < 3; ++color) {
    bool free = true;
    for (Vertex w : g.neighbors(v))
      if (c[w] == color) free = false;
    if (!free) continue;
    c[v] = color;
    if (backtrack_color(g, order, depth + 1, c)) return true;
    c[v] = 3;
  }
  return false;
}

inline std::optional<Coloring> backtracking_three_coloring(const Graph& g) {
  if (g.order() == 0) return Coloring{};
  Coloring c(g.order(), 3);
  auto order = reverse_bfs_ordering(g, 0).perm;
  std::reverse(order.begin(), order.end());
  if (backtrack_color(g, order, 0, c)) return c;
  return std::nullopt;
}

}  // namespace detail

/// Proper 3-coloring of a connected cubic graph other than K4.
inline Coloring brooks_3_coloring(const Graph& g) {
  if (!is_cubic(g)) throw ConstructionError("brooks_3_coloring: graph is not cubic");
  if (!is_connected(g)) throw ConstructionError("brooks_3_coloring: graph is not connected");
  if (is_complete(g)) throw ConstructionError("brooks_3_coloring: K4 has chromatic number 4");

  std::optional<Coloring> c = detail::reverse_bfs_three_coloring(g, 0);
  if (!c) c = detail::lovasz_three_coloring(g);
  if (!c) c = detail::backtracking_three_coloring(g);
  if (!c || !is_proper_coloring(g, *c))
    throw ConstructionError("brooks_3_coloring: no proper 3-coloring found");
  return *c;
}

/// Applies local moves until none applies:
///   X without a Z-neighbor -> Z, X without a Y-neighbor -> Y,
///   Y without a Z-neighbor -> Z.
/// Each move raises (|Z|, |Y|) lexicographically. Afterwards every X-vertex
/// has a Y- and a Z-neighbor and every Y-vertex has a Z-neighbor.
inline Coloring maximize_coloring(const Graph& g, Coloring coloring, std::size_t* moves = nullptr) {
  if (!is_proper_coloring(g, coloring))
    throw ConstructionError("maximize_coloring: input is not a proper 3-coloring");
  std::size_t count = 0;
  const auto has_neighbor = [&](Vertex v, std::uint8_t color) {
    for (Vertex w : g.neighbors(v))
      if (coloring[w] == color) return true;
    return false;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (Vertex v = 0; v < g.order(); ++v) {
      if (coloring[v] == kX && !has_neighbor(v, kZ)) {
        coloring[v] = kZ;
      } else if (coloring[v] == kX && !has_neighbor(v, kY)) {
        coloring[v] = kY;
      } else if (coloring[v] == kY && !has_neighbor(v, kZ)) {
        coloring[v] = kZ;
      } else {
        continue;
      }
      ++count;
      changed = true;
    }
  }
  if (moves) *moves = count;
  return coloring;
}

// ---------------------------------------------------------------------------
// Class decomposition of a maximized coloring

enum class CubicClass : std::uint8_t { X, YPrime, YZero, YTriple, ZPrime, ZDouble };

inline const char* to_string(CubicClass c) {
  switch (c) {
    case CubicClass::X: return "X";
    case CubicClass::YPrime: return "Y'";
    case CubicClass::YZero: return "Y0";
    case CubicClass::YTriple: return "Y'''";
    case CubicClass::ZPrime: return "Z'";
    case CubicClass::ZDouble: return "Z''";
  }
  return "?";
}

struct CubicDecomposition {
  std::vector<CubicClass> classes;
  /// Distance to Z' for vertices of Y''' and Z''; 0 elsewhere.
  std::vector<std::size_t> layer;
  Coloring coloring;

  bool has_z_prime() const {
    return std::find(classes.begin(), classes.end(), CubicClass::ZPrime) != classes.end();
  }
};

class DecompositionError : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

/// Derives the six classes and the layers from a maximized coloring without
/// validating anything.
inline CubicDecomposition classify(const Graph& g, const Coloring& coloring) {
  const std::size_t n = g.order();
  CubicDecomposition d{std::vector<CubicClass>(n), std::vector<std::size_t>(n, 0), coloring};
  const auto any_neighbor = [&](Vertex v, auto pred) {
    for (Vertex w : g.neighbors(v))
      if (pred(w)) return true;
    return false;
  };
  std::vector<bool> y_prime(n, false), z_prime(n, false);
  for (Vertex v = 0; v < n; ++v)
    if (coloring[v] == kY) y_prime[v] = any_neighbor(v, [&](Vertex w) { return coloring[w] == kX; });
  for (Vertex v = 0; v < n; ++v)
    if (coloring[v] == kZ)
      z_prime[v] = any_neighbor(v, [&](Vertex w) { return coloring[w] == kX || y_prime[w]; });
  for (Vertex v = 0; v < n; ++v) {
    switch (coloring[v]) {
      case kX: d.classes[v] = CubicClass::X; break;
      case kY:
        if (y_prime[v]) {
          d.classes[v] = CubicClass::YPrime;
        } else {
          const bool touches_z2 =
              any_neighbor(v, [&](Vertex w) { return coloring[w] == kZ && !z_prime[w]; });
          d.classes[v] = touches_z2 ? CubicClass::YTriple : CubicClass::YZero;
        }
        break;
      default: d.classes[v] = z_prime[v] ? CubicClass::ZPrime : CubicClass::ZDouble; break;
    }
  }
  std::vector<Vertex> sources;
  for (Vertex v = 0; v < n; ++v)
    if (z_prime[v]) sources.push_back(v);
  if (!sources.empty()) {
    const auto dist = bfs_distances(g, sources);
    for (Vertex v = 0; v < n; ++v)
      if (d.classes[v] == CubicClass::YTriple || d.classes[v] == CubicClass::ZDouble)
        d.layer[v] = dist[v];
  }
  return d;
}

/// Every structural property the construction relies on; one message per
/// failure naming the vertex.
inline std::vector<std::string> decomposition_violations(const Graph& g, const CubicDecomposition& d) {
  std::vector<std::string> out;
  const auto fail = [&](Vertex v, const std::string& what) {
    out.push_back("vertex " + std::to_string(v) + " (" + to_string(d.classes[v]) + "): " + what);
  };
  if (!is_proper_coloring(g, d.coloring)) out.emplace_back("coloring is not a proper 3-coloring");
  const auto cls = [&](Vertex w) { return d.classes[w]; };
  const auto is_y2 = [&](Vertex w) { return cls(w) == CubicClass::YZero || cls(w) == CubicClass::YTriple; };
  const auto in_z = [&](Vertex w) { return cls(w) == CubicClass::ZPrime || cls(w) == CubicClass::ZDouble; };
  const auto count = [&](Vertex v, auto pred) {
    std::size_t k = 0;
    for (Vertex w : g.neighbors(v))
      if (pred(w)) ++k;
    return k;
  };
  for (Vertex v = 0; v < g.order(); ++v) {
    const std::size_t deg = g.degree(v);
    switch (cls(v)) {
      case CubicClass::X:
        if (!count(v, [&](Vertex w) { return cls(w) == CubicClass::YPrime; }))
          fail(v, "X-vertex without a Y'-neighbor");
        if (!count(v, [&](Vertex w) { return cls(w) == CubicClass::ZPrime; }))
          fail(v, "X-vertex without a Z'-neighbor");
        if (count(v, [&](Vertex w) { return is_y2(w) || cls(w) == CubicClass::ZDouble; }))
          fail(v, "X-vertex with a neighbor in Y'' or Z''");
        break;
      case CubicClass::YPrime:
        if (!count(v, [&](Vertex w) { return cls(w) == CubicClass::X; }))
          fail(v, "Y'-vertex without an X-neighbor");
        if (!count(v, [&](Vertex w) { return cls(w) == CubicClass::ZPrime; }))
          fail(v, "Y'-vertex without a Z'-neighbor");
        if (count(v, [&](Vertex w) { return cls(w) == CubicClass::ZDouble; }))
          fail(v, "Y'-vertex with a Z''-neighbor");
        break;
      case CubicClass::YZero:
        if (count(v, [&](Vertex w) { return cls(w) == CubicClass::ZPrime; }) != deg)
          fail(v, "Y0-vertex with a neighbor outside Z'");
        break;
      case CubicClass::YTriple:
        if (count(v, in_z) != deg) fail(v, "Y'''-vertex with a neighbor outside Z");
        if (!count(v, [&](Vertex w) { return cls(w) == CubicClass::ZDouble; }))
          fail(v, "Y'''-vertex without a Z''-neighbor");
        if (d.layer[v] == kUnreachable || d.layer[v] % 2 != 1) fail(v, "Y'''-vertex not in an odd layer");
        break;
      case CubicClass::ZPrime:
        if (!count(v, [&](Vertex w) { return cls(w) == CubicClass::X || cls(w) == CubicClass::YPrime; }))
          fail(v, "Z'-vertex without a neighbor in X or Y'");
        break;
      case CubicClass::ZDouble:
        if (count(v, [&](Vertex w) { return cls(w) == CubicClass::YTriple; }) != deg)
          fail(v, "Z''-vertex with a neighbor outside Y'''");
        if (d.layer[v] == kUnreachable || d.layer[v] == 0 || d.layer[v] % 2 != 0)
          fail(v, "Z''-vertex not in an even layer");
        break;
    }
    if (cls(v) == CubicClass::YTriple || cls(v) == CubicClass::ZDouble) {
      const std::size_t i = d.layer[v];
      if (i == 1) {
        if (!count(v, [&](Vertex w) { return cls(w) == CubicClass::ZDouble && d.layer[w] == 2; }))
          fail(v, "D1-vertex without a D2-neighbor");
      } else if (i >= 2 && i != kUnreachable) {
        if (!count(v, [&](Vertex w) {
              return (cls(w) == CubicClass::YTriple || cls(w) == CubicClass::ZDouble) && d.layer[w] == i - 1;
            }))
          fail(v, "D" + std::to_string(i) + "-vertex without a neighbor in the previous layer");
      }
    }
  }
  return out;
}

inline CubicDecomposition cubic_decompose(const Graph& g, const Coloring& maximized) {
  if (!is_cubic(g)) throw DecompositionError("cubic_decompose: graph is not cubic");
  auto d = classify(g, maximized);
  if (!d.has_z_prime()) throw DecompositionError("cubic_decompose: Z' is empty");
  const auto violations = decomposition_violations(g, d);
  if (!violations.empty()) {
    std::string msg = "cubic_decompose: " + std::to_string(violations.size()) + " violation(s):";
    for (const auto& v : violations) msg += "\n  " + v;
    throw DecompositionError(msg);
  }
  return d;
}

inline CubicDecomposition cubic_decompose(const Graph& g) {
  return cubic_decompose(g, maximize_coloring(g, brooks_3_coloring(g)));
}

/// rho from the decomposition: 0 on X and D_{3i-2}, 1 on Y', 2 on D_{3i-1},
/// 3 on Y0, Z' and D_{3i}.
inline PushingScheme decomposition_scheme(const CubicDecomposition& d) {
  PushingScheme s(d.classes.size());
  for (Vertex v = 0; v < s.size(); ++v) {
    switch (d.classes[v]) {
      case CubicClass::X: s[v] = 0; break;
      case CubicClass::YPrime: s[v] = 1; break;
      case CubicClass::YZero:
      case CubicClass::ZPrime: s[v] = 3; break;
      default: {
        static constexpr std::array<PushValue, 3> by_residue{3, 0, 2};
        s[v] = by_residue[d.layer[v] % 3];
      }
    }
  }
  return s;
}

/// Checks each vertex's sigma against the admissible set of its class and
/// the two refinements for sigma = 12.
inline std::vector<std::string> sigma_table_violations(const Graph& g, const CubicDecomposition& d,
                                                       const std::vector<SigmaValue>& sigma) {
  std::vector<std::string> out;
  const auto in = [](SigmaValue s, std::initializer_list<SigmaValue> allowed) {
    return std::find(allowed.begin(), allowed.end(), s) != allowed.end();
  };
  const auto layered = [&](Vertex w) {
    return d.classes[w] == CubicClass::YTriple || d.classes[w] == CubicClass::ZDouble;
  };
  for (Vertex v = 0; v < g.order(); ++v) {
    const SigmaValue s = sigma[v];
    bool ok = true;
    std::string set;
    switch (d.classes[v]) {
      case CubicClass::X: ok = in(s, {8, 10}); set = "{8,10}"; break;
      case CubicClass::YPrime: ok = in(s, {9, 12}); set = "{9,12}"; break;
      case CubicClass::YZero: ok = s == 21; set = "{21}"; break;
      case CubicClass::ZPrime:
        ok = s >= 12 && s <= 19;
        set = "{12..19}";
        if (ok && s == 12)
          for (Vertex w : g.neighbors(v))
            if (d.classes[w] == CubicClass::YPrime) {
              ok = false;
              set = "{12..19}, sigma 12 only without Y'-neighbors";
            }
        break;
      default: {
        const std::size_t i = d.layer[v];
        if (i == 1) {
          ok = in(s, {10, 11});
          set = "{10,11}";
        } else if (i % 3 == 1) {
          ok = in(s, {10, 11, 12});
          set = "{10,11,12}";
          if (ok && s == 12)
            for (Vertex w : g.neighbors(v))
              if (!layered(w) || d.layer[w] % 3 != 0) {
                ok = false;
                set = "{10,11,12}, sigma 12 only with all neighbors in D_{3i}";
              }
        } else if (i % 3 == 2) {
          ok = in(s, {9, 12, 15});
          set = "{9,12,15}";
        } else {
          ok = in(s, {14, 16, 18});
          set = "{14,16,18}";
        }
      }
    }
    if (!ok)
      out.push_back("vertex " + std::to_string(v) + " (" + to_string(d.classes[v]) + ", layer " +
                    std::to_string(d.layer[v]) + "): sigma " + std::to_string(s) + " not in " + set);
  }
  return out;
}

/// Lines "v class layer rho sigma".
inline std::string decomposition_dump(const Graph& g, const CubicDecomposition& d,
                                      const PushingScheme& scheme) {
  const auto sigma = sigma_values(g, scheme);
  std::ostringstream out;
  for (Vertex v = 0; v < g.order(); ++v)
    out << v << ' ' << to_string(d.classes[v]) << ' ' << d.layer[v] << ' ' << scheme[v] << ' '
        << sigma[v] << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Distance-mod-3 scheme: value `top` at distance 0 mod 3, 1 at 1 mod 3, 0 at
// 2 mod 3. Proper on connected regular bipartite graphs.

namespace detail {
inline PushingScheme bfs_mod3_scheme(const Graph& g, Vertex root, PushValue top) {
  const auto dist = bfs_distances(g, root);
  PushingScheme s(g.order());
  const std::array<PushValue, 3> by_residue{top, 1, 0};
  for (Vertex v = 0; v < g.order(); ++v) {
    if (dist[v] == kUnreachable) throw ConstructionError("bfs_mod3_scheme: graph is not connected");
    s[v] = by_residue[dist[v] % 3];
  }
  return s;
}
}  // namespace detail

inline PushingScheme bipartite_regular_scheme(const Graph& g, Vertex root = 0) {
  if (g.order() == 0) return {};
  if (root >= g.order()) throw ConstructionError("bipartite_regular_scheme: root out of range");
  if (!g.is_regular()) throw ConstructionError("bipartite_regular_scheme: graph is not regular");
  const std::size_t delta = g.max_degree();
  if (delta < 4) throw ConstructionError("bipartite_regular_scheme: degree must be at least 4");
  if (!bipartition(g)) throw ConstructionError("bipartite_regular_scheme: graph is not bipartite");

  PushingScheme scheme(g.order());
  for (const auto& comp : components(g)) {
    const bool has_root = std::binary_search(comp.begin(), comp.end(), root);
    const Vertex local_root =
        has_root ? static_cast<Vertex>(std::lower_bound(comp.begin(), comp.end(), root) - comp.begin()) : 0;
    const auto local = detail::bfs_mod3_scheme(g.induced(comp), local_root, static_cast<PushValue>(delta));
    for (std::size_t i = 0; i < comp.size(); ++i) scheme[comp[i]] = local[i];
  }
  if (!is_proper(g, scheme)) throw ConstructionError("bipartite_regular_scheme: result is not proper");
  return scheme;
}

// ---------------------------------------------------------------------------
// Cubic graphs: every value in {0,1,2,3}

enum class CubicMethod { complete_k4, decomposition, bfs_mod3_fallback, exact_fallback };

inline const char* to_string(CubicMethod m) {
  switch (m) {
    case CubicMethod::complete_k4: return "k4";
    case CubicMethod::decomposition: return "decomposition";
    case CubicMethod::bfs_mod3_fallback: return "bfs-mod3-fallback";
    case CubicMethod::exact_fallback: return "exact-fallback";
  }
  return "?";
}

struct CubicComponentReport {
  std::vector<Vertex> vertices;
  CubicMethod method = CubicMethod::decomposition;
  /// Local indices (position in `vertices`); present for the decomposition method.
  std::optional<CubicDecomposition> decomposition;
};

struct CubicSchemeResult {
  PushingScheme scheme;
  std::vector<CubicComponentReport> components;
};

inline CubicSchemeResult cubic_scheme_detailed(const Graph& g) {
  if (!is_cubic(g) && g.order() != 0) throw ConstructionError("cubic_scheme: graph is not cubic");
  CubicSchemeResult result{PushingScheme(g.order()), {}};

  for (auto& comp : components(g)) {
    const Graph h = g.induced(comp);
    CubicComponentReport report{comp, CubicMethod::decomposition, std::nullopt};
    PushingScheme local(h.order());
    if (is_complete(h)) {
      report.method = CubicMethod::complete_k4;
      local = PushingScheme{0, 1, 2, 3};
    } else {
      auto d = classify(h, maximize_coloring(h, brooks_3_coloring(h)));
      if (d.has_z_prime()) {
        d = cubic_decompose(h, d.coloring);
        local = decomposition_scheme(d);
        report.decomposition = std::move(d);
      } else {
        report.method = CubicMethod::bfs_mod3_fallback;
        local = detail::bfs_mod3_scheme(h, 0, 3);
        if (!is_proper(h, local)) {
          report.method = CubicMethod::exact_fallback;
          auto exact = feasible_with_cap(h, 3);
          if (!exact) throw ConstructionError("cubic_scheme: no scheme with values <= 3 on a component");
          local = std::move(*exact);
        }
      }
    }
    if (!is_proper(h, local)) {
      std::string msg = "cubic_scheme: construction produced an improper scheme on a component";
      if (report.decomposition) msg += "\n" + decomposition_dump(h, *report.decomposition, local);
      throw ConstructionError(msg);
    }
    for (std::size_t i = 0; i < comp.size(); ++i) result.scheme[comp[i]] = local[i];
    result.components.push_back(std::move(report));
  }
  if (!is_proper(g, result.scheme)) throw ConstructionError("cubic_scheme: combined scheme is not proper");
  return result;
}

inline PushingScheme cubic_scheme(const Graph& g) { return cubic_scheme_detailed(g).scheme; }

}  // namespace pushing
