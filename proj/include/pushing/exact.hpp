#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pushing/graph.hpp"
#include "pushing/greedy.hpp"
#include "pushing/scheme.hpp"

namespace pushing {

enum class ExactStatus { optimal, cap_exceeded, node_limit };

inline const char* to_string(ExactStatus s) {
  switch (s) {
    case ExactStatus::optimal: return "optimal";
    case ExactStatus::cap_exceeded: return "cap-exceeded";
    case ExactStatus::node_limit: return "node-limit";
  }
  return "?";
}

struct ExactResult {
  std::uint64_t value = 0;
  PushingScheme witness;
  std::uint64_t nodes = 0;
  ExactStatus status = ExactStatus::optimal;
};

struct CapSearchResult {
  std::optional<PushingScheme> scheme;
  std::uint64_t nodes = 0;
  /// False when the node limit stopped the search before it was exhausted.
  bool complete = true;
};

namespace detail {

/// Depth-first assignment over a static vertex order with incremental sigma.
/// An edge is tested only once both endpoints have final sigma, i.e. once
/// their closed neighborhoods are fully assigned.
class PushSearch {
 public:
  explicit PushSearch(const Graph& g)
      : g_(g), order_(g.order()), scheme_(g.order()), sigma_(g.order()), pending_(g.order()) {
    std::iota(order_.begin(), order_.end(), Vertex{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    for (Vertex u = 0; u < g.order(); ++u) {
      sigma_[u] = g.degree(u);
      pending_[u] = g.degree(u) + 1;
    }
  }

  void set_node_limit(std::uint64_t limit) { node_limit_ = limit; }
  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

  /// Any proper scheme with every value <= cap.
  std::optional<PushingScheme> find_with_cap(PushValue cap) {
    cap_ = cap;
    budget_mode_ = false;
    if (search(0)) return best_;
    return std::nullopt;
  }

  /// Minimum-total proper scheme with total < incumbent_total, if any.
  std::optional<PushingScheme> minimize_total(std::uint64_t incumbent_total) {
    budget_mode_ = true;
    incumbent_ = incumbent_total;
    found_ = false;
    search(0);
    if (found_) return best_;
    return std::nullopt;
  }

  std::uint64_t incumbent() const { return incumbent_; }

 private:
  void assign(Vertex x, PushValue value) {
    scheme_[x] = value;
    sigma_[x] += SigmaValue{value} * g_.degree(x);
    --pending_[x];
    for (Vertex w : g_.neighbors(x)) {
      sigma_[w] += value;
      --pending_[w];
    }
    total_ += value;
  }

  void unassign(Vertex x) {
    const PushValue value = scheme_[x];
    sigma_[x] -= SigmaValue{value} * g_.degree(x);
    ++pending_[x];
    for (Vertex w : g_.neighbors(x)) {
      sigma_[w] -= value;
      ++pending_[w];
    }
    total_ -= value;
    scheme_[x] = 0;
  }

  /// Checks every edge that became fully decided by assigning x.
  bool consistent_after(Vertex x) const {
    const auto check = [&](Vertex w) {
      if (pending_[w] != 0) return true;
      for (Vertex z : g_.neighbors(w))
        if (pending_[z] == 0 && sigma_[z] == sigma_[w]) return false;
      return true;
    };
    if (!check(x)) return false;
    for (Vertex w : g_.neighbors(x))
      if (!check(w)) return false;
    return true;
  }

  bool search(std::size_t depth) {
    if (aborted_) return false;
    if (depth == order_.size()) {
      best_ = scheme_;
      if (budget_mode_) {
        incumbent_ = total_;
        found_ = true;
        return false;  // keep improving
      }
      return true;
    }
    const Vertex x = order_[depth];
    for (PushValue value = 0;; ++value) {
      if (budget_mode_) {
        if (total_ + value >= incumbent_) break;
      } else if (value > cap_) {
        break;
      }
      if (node_limit_ != 0 && nodes_ >= node_limit_) {
        aborted_ = true;
        return false;
      }
      ++nodes_;
      assign(x, value);
      const bool ok = consistent_after(x);
      if (ok && search(depth + 1)) {
        unassign(x);
        return true;
      }
      unassign(x);
      if (aborted_) return false;
    }
    return false;
  }

  const Graph& g_;
  std::vector<Vertex> order_;
  PushingScheme scheme_;
  std::vector<SigmaValue> sigma_;
  std::vector<std::size_t> pending_;
  PushingScheme best_;
  std::uint64_t total_ = 0;
  PushValue cap_ = 0;
  bool budget_mode_ = false;
  std::uint64_t incumbent_ = 0;
  bool found_ = false;
  std::uint64_t nodes_ = 0;
  std::uint64_t node_limit_ = 0;
  bool aborted_ = false;
};

inline void require_nice(const Graph& g, const char* who) {
  if (!is_nice(g)) throw GraphError(std::string(who) + ": graph has a component of order two");
}

}  // namespace detail

/// Detailed cap search; `node_limit` 0 means unlimited.
inline CapSearchResult search_with_cap(const Graph& g, PushValue cap, std::uint64_t node_limit = 0) {
  detail::require_nice(g, "feasible_with_cap");
  detail::PushSearch search(g);
  search.set_node_limit(node_limit);
  CapSearchResult r;
  r.scheme = search.find_with_cap(cap);
  r.nodes = search.nodes();
  r.complete = !search.aborted();
  return r;
}

/// A proper scheme with all values in [0, cap], if one exists.
inline std::optional<PushingScheme> feasible_with_cap(const Graph& g, PushValue cap) {
  return search_with_cap(g, cap).scheme;
}

/// Smallest achievable maximum push value, searched cap by cap up to Delta^2.
inline ExactResult exact_p1(const Graph& g) {
  detail::require_nice(g, "exact_p1");
  const std::size_t delta = g.max_degree();
  const auto ceiling = static_cast<PushValue>(delta * delta);
  ExactResult result;
  for (PushValue k = 0; k <= ceiling; ++k) {
    auto r = search_with_cap(g, k);
    result.nodes += r.nodes;
    if (r.scheme) {
      result.value = k;
      result.witness = std::move(*r.scheme);
      result.status = ExactStatus::optimal;
      return result;
    }
  }
  result.status = ExactStatus::cap_exceeded;
  result.value = ceiling;
  return result;
}

struct ExactTotalOptions {
  std::uint64_t seed = 0;
  std::size_t greedy_trials = 16;
};

/// Smallest achievable total, by branch and bound from a greedy incumbent.
/// Per-vertex values are limited only by the remaining budget.
inline ExactResult exact_pt(const Graph& g, ExactTotalOptions options = {}) {
  detail::require_nice(g, "exact_pt");
  ExactResult result;
  auto start = greedy_under_bound(g, options.seed, options.greedy_trials);
  result.witness = std::move(start.scheme);
  result.value = scheme_cost(result.witness).total;
  if (result.value == 0) return result;

  detail::PushSearch search(g);
  if (auto better = search.minimize_total(result.value)) {
    result.witness = std::move(*better);
    result.value = search.incumbent();
  }
  result.nodes = search.nodes();
  return result;
}

/// "graph_id,parameter,value,nodes,witness" with the witness space-separated.
inline std::string exact_record(std::size_t graph_id, std::string_view parameter, const ExactResult& r) {
  std::string out = std::to_string(graph_id) + "," + std::string(parameter) + "," + std::to_string(r.value) + "," +
                    std::to_string(r.nodes) + ",";
  for (std::size_t i = 0; i < r.witness.size(); ++i) out += (i ? " " : "") + std::to_string(r.witness[i]);
  return out;
}

struct OracleResult {
  /// Minimum over proper schemes inside the box; nullopt when none exists.
  std::optional<std::uint64_t> p1;
  std::optional<std::uint64_t> pt;
  std::uint64_t schemes_checked = 0;
};

class OracleTooLarge : public std::invalid_argument {
 public:
  OracleTooLarge(const std::string& what, double size) : std::invalid_argument(what), size_(size) {}
  double size() const noexcept { return size_; }

 private:
  double size_;
};

inline constexpr double kOracleMaxBox = 1e8;

/// Exhaustive scan of every scheme with values in [0, max_value].
inline OracleResult enumerate_oracle(const Graph& g, PushValue max_value) {
  detail::require_nice(g, "enumerate_oracle");
  const double box = std::pow(static_cast<double>(max_value) + 1.0, static_cast<double>(g.order()));
  if (box > kOracleMaxBox)
    throw OracleTooLarge("enumerate_oracle: box of " + std::to_string(box) +
                             " schemes exceeds the 1e8 limit",
                         box);
  OracleResult out;
  PushingScheme scheme(g.order());
  while (true) {
    ++out.schemes_checked;
    if (is_proper(g, scheme)) {
      const auto cost = scheme_cost(scheme);
      if (!out.p1 || cost.max < *out.p1) out.p1 = cost.max;
      if (!out.pt || cost.total < *out.pt) out.pt = cost.total;
    }
    std::size_t i = 0;
    while (i < scheme.size() && scheme[i] == max_value) scheme[i++] = 0;
    if (i == scheme.size()) break;
    ++scheme[i];
  }
  return out;
}

}  // namespace pushing
