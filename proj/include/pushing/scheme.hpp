#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pushing/graph.hpp"

namespace pushing {

using PushValue = std::uint32_t;
using SigmaValue = std::uint64_t;

/// Number of pushes applied to each vertex.
struct PushingScheme {
  std::vector<PushValue> rho;

  PushingScheme() = default;
  explicit PushingScheme(std::size_t n) : rho(n, 0) {}
  explicit PushingScheme(std::vector<PushValue> values) : rho(std::move(values)) {}
  PushingScheme(std::initializer_list<PushValue> values) : rho(values) {}

  std::size_t size() const noexcept { return rho.size(); }
  PushValue operator[](Vertex v) const { return rho[v]; }
  PushValue& operator[](Vertex v) { return rho[v]; }

  bool operator==(const PushingScheme&) const = default;
};

class SchemeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SigmaProfile {
  std::vector<SigmaValue> sigma;
  /// Monochromatic edges in lexicographic order.
  std::vector<Edge> conflicts;
};

namespace detail {
inline void require_matching_order(const Graph& g, const PushingScheme& scheme) {
  if (scheme.size() != g.order())
    throw SchemeError("scheme has " + std::to_string(scheme.size()) + " entries, graph has " +
                      std::to_string(g.order()) + " vertices");
}
}  // namespace detail

/// sigma(u) = (1 + rho(u)) d(u) + sum of rho over N(u).
inline std::vector<SigmaValue> sigma_values(const Graph& g, const PushingScheme& scheme) {
  detail::require_matching_order(g, scheme);
  std::vector<SigmaValue> sigma(g.order());
  for (Vertex u = 0; u < g.order(); ++u) {
    SigmaValue s = (SigmaValue{1} + scheme[u]) * g.degree(u);
    for (Vertex w : g.neighbors(u)) s += scheme[w];
    sigma[u] = s;
  }
  return sigma;
}

inline SigmaProfile derive_sigma(const Graph& g, const PushingScheme& scheme) {
  SigmaProfile p{sigma_values(g, scheme), {}};
  for (const Edge& e : g.edges())
    if (p.sigma[e.u] == p.sigma[e.v]) p.conflicts.push_back(e);
  return p;
}

/// Label 1 + rho(u) + rho(v) of the edge uv.
inline SigmaValue edge_label(const Graph& g, const PushingScheme& scheme, Edge e) {
  detail::require_matching_order(g, scheme);
  if (e.v >= g.order() || !g.adjacent(e.u, e.v))
    throw SchemeError("edge_label: {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                      "} is not an edge");
  return SigmaValue{1} + scheme[e.u] + scheme[e.v];
}

struct ProperCheck {
  bool proper = false;
  /// Lexicographically first monochromatic edge when not proper.
  std::optional<Edge> witness;

  explicit operator bool() const noexcept { return proper; }
};

inline ProperCheck is_proper(const Graph& g, const PushingScheme& scheme) {
  const auto sigma = sigma_values(g, scheme);
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex w : g.neighbors(u))
      if (u < w && sigma[u] == sigma[w]) return {false, Edge(u, w)};
  return {true, std::nullopt};
}

struct SchemeCost {
  std::uint64_t max = 0;
  std::uint64_t total = 0;
};

inline SchemeCost scheme_cost(const PushingScheme& scheme) {
  SchemeCost c;
  for (PushValue r : scheme.rho) {
    c.max = std::max<std::uint64_t>(c.max, r);
    c.total += r;
  }
  return c;
}

/// "rho: v0 v1 ... v_{n-1}"
inline std::string format_scheme(const PushingScheme& scheme) {
  std::string out = "rho:";
  for (PushValue r : scheme.rho) out += " " + std::to_string(r);
  return out;
}

/// Parses whitespace-separated non-negative integers, with or without a
/// leading "rho:" tag.
inline PushingScheme parse_scheme(std::string_view text) {
  std::string body(text);
  if (const auto pos = body.find("rho:"); pos != std::string::npos) body = body.substr(pos + 4);
  std::istringstream in(body);
  PushingScheme scheme;
  std::string token;
  while (in >> token) {
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw SchemeError("scheme entry '" + token + "' is not a non-negative integer");
    const unsigned long long v = std::stoull(token);
    if (v > std::numeric_limits<PushValue>::max()) throw SchemeError("scheme entry too large: " + token);
    scheme.rho.push_back(static_cast<PushValue>(v));
  }
  return scheme;
}

}  // namespace pushing
