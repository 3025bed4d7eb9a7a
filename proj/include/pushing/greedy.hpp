#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <boost/rational.hpp>

#include "pushing/graph.hpp"
#include "pushing/random.hpp"
#include "pushing/scheme.hpp"

namespace pushing {

using Rational = boost::rational<std::int64_t>;

/// perm[i] is the vertex processed at step i+1.
struct VertexOrdering {
  std::vector<Vertex> perm;

  std::size_t size() const noexcept { return perm.size(); }
  bool operator==(const VertexOrdering&) const = default;
};

inline bool is_permutation_of_order(const VertexOrdering& ordering, std::size_t n) {
  if (ordering.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (Vertex v : ordering.perm) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

/// One greedy step. `excluded` lists the candidate values rejected before g.
struct GreedyStep {
  Vertex vertex = 0;
  std::size_t s1 = 0;
  std::size_t s2 = 0;
  PushValue g = 0;
  std::vector<PushValue> excluded;
};

struct GreedyTrace {
  std::vector<GreedyStep> steps;
};

struct GreedyResult {
  PushingScheme scheme;
  GreedyTrace trace;
};

struct GreedyOptions {
  /// Re-check every processed edge after each step, including the
  /// degree <= 1 shortcut.
  bool verify_prefix = false;
};

class GreedyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Incremental greedy state: rho_i, sigma_i and the processed prefix.
class GreedyState {
 public:
  explicit GreedyState(const Graph& g)
      : g_(g), scheme_(g.order()), sigma_(g.order()), processed_(g.order(), false) {
    for (Vertex u = 0; u < g.order(); ++u) sigma_[u] = g.degree(u);
  }

  const PushingScheme& scheme() const { return scheme_; }
  const std::vector<SigmaValue>& sigma() const { return sigma_; }
  bool processed(Vertex v) const { return processed_[v]; }

  void set_value(Vertex u, PushValue value) {
    const auto old = scheme_[u];
    scheme_[u] = value;
    sigma_[u] = sigma_[u] - SigmaValue{old} * g_.degree(u) + SigmaValue{value} * g_.degree(u);
    for (Vertex w : g_.neighbors(u)) sigma_[w] = sigma_[w] - old + value;
  }

  void mark_processed(Vertex u) { processed_[u] = true; }

  /// Would raising rho(u) from its current value by `delta` keep every
  /// processed edge near u (u itself counted as processed) conflict-free?
  bool candidate_ok(Vertex u, PushValue delta) const {
    const SigmaValue su = sigma_[u] + SigmaValue{delta} * g_.degree(u);
    for (Vertex j : g_.neighbors(u)) {
      if (!processed_[j]) continue;
      const SigmaValue sj = sigma_[j] + delta;
      if (su == sj) return false;
      for (Vertex k : g_.neighbors(j)) {
        if (k == u || !processed_[k]) continue;
        const SigmaValue sk = sigma_[k] + (g_.adjacent(u, k) ? delta : 0);
        if (sj == sk) return false;
      }
    }
    return true;
  }

  /// True iff no edge with both endpoints processed is monochromatic.
  bool prefix_proper() const {
    for (Vertex a = 0; a < g_.order(); ++a) {
      if (!processed_[a]) continue;
      for (Vertex b : g_.neighbors(a))
        if (a < b && processed_[b] && sigma_[a] == sigma_[b]) return false;
    }
    return true;
  }

  /// s_i^(1) and s_i^(2) for u against the current processed set.
  std::pair<std::size_t, std::size_t> conflict_counts(Vertex u) const {
    std::size_t s1 = 0, s2 = 0;
    for (Vertex j : g_.neighbors(u)) {
      if (!processed_[j]) continue;
      ++s1;
      for (Vertex k : g_.neighbors(j))
        if (k != u && processed_[k] && !g_.adjacent(u, k)) ++s2;
    }
    return {s1, s2};
  }

  /// Smallest value for u (currently 0) keeping the processed prefix proper.
  GreedyStep choose(Vertex u) const {
    GreedyStep step;
    step.vertex = u;
    std::tie(step.s1, step.s2) = conflict_counts(u);
    if (g_.degree(u) <= 1) return step;
    const std::size_t ceiling = step.s1 + step.s2;
    for (std::size_t s = 0;; ++s) {
      if (candidate_ok(u, static_cast<PushValue>(s))) {
        step.g = static_cast<PushValue>(s);
        return step;
      }
      step.excluded.push_back(static_cast<PushValue>(s));
      if (s >= ceiling)
        throw GreedyError("greedy step at vertex " + std::to_string(u) +
                          " found no value within s1+s2 = " + std::to_string(ceiling));
    }
  }

 private:
  const Graph& g_;
  PushingScheme scheme_;
  std::vector<SigmaValue> sigma_;
  std::vector<bool> processed_;
};

}  // namespace detail

/// Processes vertices in `ordering`, giving each the smallest push value that
/// keeps every edge between processed vertices properly colored by sigma.
inline GreedyResult greedy_run(const Graph& g, const VertexOrdering& ordering,
                               GreedyOptions options = {}) {
  if (!is_nice(g)) throw GraphError("greedy_run: graph has a component of order two");
  if (!is_permutation_of_order(ordering, g.order()))
    throw GraphError("greedy_run: ordering is not a permutation of the vertices");

  detail::GreedyState state(g);
  GreedyResult result;
  result.trace.steps.reserve(g.order());
  for (Vertex u : ordering.perm) {
    GreedyStep step = state.choose(u);
    state.set_value(u, step.g);
    state.mark_processed(u);
    if (options.verify_prefix && !state.prefix_proper())
      throw GreedyError("greedy prefix became improper after vertex " + std::to_string(u));
    result.trace.steps.push_back(std::move(step));
  }
  result.scheme = state.scheme();
  return result;
}

inline VertexOrdering random_ordering(std::size_t n, std::uint64_t seed) {
  return {shuffled_indices(n, seed)};
}

/// BFS levels from `root`, emitted farthest level first, ascending index inside
/// a level. Every vertex except the root has a neighbor later in the ordering.
inline VertexOrdering reverse_bfs_ordering(const Graph& g, Vertex root) {
  if (root >= g.order()) throw GraphError("reverse_bfs_ordering: root out of range");
  const auto dist = bfs_distances(g, root);
  if (std::find(dist.begin(), dist.end(), kUnreachable) != dist.end())
    throw GraphError("reverse_bfs_ordering: graph is not connected");
  VertexOrdering ordering;
  ordering.perm.resize(g.order());
  std::iota(ordering.perm.begin(), ordering.perm.end(), Vertex{0});
  std::stable_sort(ordering.perm.begin(), ordering.perm.end(),
                   [&](Vertex a, Vertex b) { return dist[a] > dist[b]; });
  return ordering;
}

/// Sum over vertices of d(2d+1)/6, the expected value of sum(s1+s2) over a
/// uniformly random ordering when the graph is triangle-free.
inline Rational expected_total_bound(const Graph& g) {
  Rational total = 0;
  for (Vertex u = 0; u < g.order(); ++u) {
    const auto d = static_cast<std::int64_t>(g.degree(u));
    total += Rational(d * (2 * d + 1), 6);
  }
  return total;
}

struct BoundedGreedyResult {
  PushingScheme scheme;
  std::size_t trials_used = 0;
  bool bound_met = false;
};

/// Seed used for trial `t` (0-based) of a seeded batch of orderings.
inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return derive_seed(seed, trial);
}

/// Runs greedy on seeded random orderings until the total is at most
/// expected_total_bound; falls back to the best-total scheme seen.
inline BoundedGreedyResult greedy_under_bound(const Graph& g, std::uint64_t seed,
                                              std::size_t max_trials) {
  if (max_trials == 0) throw GraphError("greedy_under_bound: max_trials must be at least 1");
  if (!is_nice(g)) throw GraphError("greedy_under_bound: graph has a component of order two");
  const Rational bound = expected_total_bound(g);
  BoundedGreedyResult best;
  std::optional<std::uint64_t> best_total;
  for (std::size_t t = 0; t < max_trials; ++t) {
    auto run = greedy_run(g, random_ordering(g.order(), trial_seed(seed, t)));
    const auto total = scheme_cost(run.scheme).total;
    if (!best_total || total < *best_total) {
      best_total = total;
      best.scheme = std::move(run.scheme);
    }
    best.trials_used = t + 1;
    if (Rational(static_cast<std::int64_t>(total)) <= bound) {
      best.bound_met = true;
      break;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Max push value at most Delta^2 - 1 for connected regular graphs.

struct DeltaSqResult {
  PushingScheme scheme;
  VertexOrdering ordering;
  /// Set when the final vertex needed Delta^2 and a neighbor was re-valued.
  bool retry_used = false;
  std::optional<Vertex> retry_vertex;
  std::optional<PushValue> retry_value;
};

namespace detail {

/// Lowest-index neighbor v of u that has a neighbor w != u not adjacent to
/// every vertex of N(u).
inline std::optional<Vertex> pivot_neighbor(const Graph& g, Vertex u) {
  for (Vertex v : g.neighbors(u)) {
    for (Vertex w : g.neighbors(v)) {
      if (w == u) continue;
      for (Vertex x : g.neighbors(u))
        if (x != w && !g.adjacent(w, x)) return v;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline DeltaSqResult delta_sq_minus_one_scheme(const Graph& g, Vertex root = 0) {
  if (g.order() == 0) return {};
  if (!is_connected(g)) throw GraphError("delta_sq_minus_one_scheme: graph is not connected");
  if (!is_nice(g)) throw GraphError("delta_sq_minus_one_scheme: graph is not nice");
  if (!g.is_regular()) throw GraphError("delta_sq_minus_one_scheme: graph is not regular");
  if (is_balanced_complete_bipartite(g))
    throw GraphError("delta_sq_minus_one_scheme: K_{d,d} is excluded");

  const std::size_t delta = g.max_degree();
  const auto limit = static_cast<PushValue>(delta * delta - 1);
  DeltaSqResult out;
  out.ordering = reverse_bfs_ordering(g, root);
  const Vertex last = out.ordering.perm.back();

  detail::GreedyState state(g);
  for (std::size_t i = 0; i + 1 < out.ordering.size(); ++i) {
    const Vertex u = out.ordering.perm[i];
    const auto step = state.choose(u);
    state.set_value(u, step.g);
    state.mark_processed(u);
  }
  const auto final_step = state.choose(last);
  if (final_step.g <= limit) {
    state.set_value(last, final_step.g);
    out.scheme = state.scheme();
    return out;
  }

  // Re-value a neighbor v of the last vertex to some t' in [0, d^2-d+1] \ {t}
  // that keeps the first n-1 vertices proper, then re-finalize the last vertex.
  const auto pivot = detail::pivot_neighbor(g, last);
  if (!pivot) throw GreedyError("delta_sq_minus_one_scheme: no pivot neighbor for final vertex");
  const PushValue t = state.scheme()[*pivot];
  const auto retry_max = static_cast<PushValue>(delta * delta - delta + 1);
  for (PushValue candidate = 0; candidate <= retry_max; ++candidate) {
    if (candidate == t) continue;
    detail::GreedyState trial = state;
    trial.set_value(*pivot, candidate);
    if (!trial.prefix_proper()) continue;
    for (PushValue s = 0; s <= limit; ++s) {
      if (trial.candidate_ok(last, s)) {
        trial.set_value(last, s);
        out.scheme = trial.scheme();
        out.retry_used = true;
        out.retry_vertex = *pivot;
        out.retry_value = candidate;
        return out;
      }
    }
  }
  std::ostringstream msg;
  msg << "delta_sq_minus_one_scheme: no retry succeeded; final vertex " << last
      << ", pivot " << *pivot << ", prefix " << format_scheme(state.scheme());
  throw GreedyError(msg.str());
}

// ---------------------------------------------------------------------------

/// CSV with columns step,vertex,s1,s2,g,excluded_count (1-based steps).
inline std::string trace_csv(const GreedyTrace& trace) {
  std::string out = "step,vertex,s1,s2,g,excluded_count\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    out += std::to_string(i + 1) + "," + std::to_string(s.vertex) + "," + std::to_string(s.s1) +
           "," + std::to_string(s.s2) + "," + std::to_string(s.g) + "," +
           std::to_string(s.excluded.size()) + "\n";
  }
  return out;
}

}  // namespace pushing
