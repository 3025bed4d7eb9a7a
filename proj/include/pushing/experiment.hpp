#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pushing/constructions.hpp"
#include "pushing/exact.hpp"
#include "pushing/graph.hpp"
#include "pushing/greedy.hpp"
#include "pushing/scheme.hpp"

namespace pushing {

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rational parse_rational(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

// ---------------------------------------------------------------------------
// Construction dispatch

struct ConstructedScheme {
  PushingScheme scheme;
  std::string method;
};

/// Best applicable construction: cubic, regular bipartite (degree >= 4),
/// K_{d,d}, connected regular (max <= d^2 - 1); otherwise nullopt.
inline std::optional<ConstructedScheme> construct_scheme(const Graph& g) {
  if (g.order() == 0 || !is_nice(g)) return std::nullopt;
  if (is_cubic(g)) return ConstructedScheme{cubic_scheme(g), "cubic"};
  if (!g.is_regular() || g.max_degree() == 0) return std::nullopt;
  if (g.max_degree() >= 4 && bipartition(g)) return ConstructedScheme{bipartite_regular_scheme(g), "bipartite-regular"};
  if (!is_connected(g)) return std::nullopt;
  if (is_balanced_complete_bipartite(g)) {
    PushingScheme s(g.order());
    s[0] = 1;
    return ConstructedScheme{s, "complete-bipartite"};
  }
  return ConstructedScheme{delta_sq_minus_one_scheme(g).scheme, "delta-sq-minus-one"};
}

// ---------------------------------------------------------------------------
// Batch runs over graph6 streams

enum class BatchMode { greedy, construct, exact_p1 };

inline const char* to_string(BatchMode m) {
  switch (m) {
    case BatchMode::greedy: return "greedy";
    case BatchMode::construct: return "construct";
    case BatchMode::exact_p1: return "exact-p1";
  }
  return "?";
}

inline std::optional<BatchMode> parse_batch_mode(std::string_view s) {
  if (s == "greedy") return BatchMode::greedy;
  if (s == "construct") return BatchMode::construct;
  if (s == "exact-p1") return BatchMode::exact_p1;
  return std::nullopt;
}

struct BatchRow {
  std::size_t graph_id = 0;  // 1-based input line number
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t delta = 0;
  bool regular = false;
  std::optional<std::size_t> girth;
  std::string mode;
  std::uint64_t p1_or_max = 0;
  std::uint64_t total = 0;
  Rational bound = 0;
  std::size_t trials = 0;
  bool proper = false;
  /// ok | not-nice | not-applicable | failed
  std::string status = "ok";
  double runtime_ms = 0.0;
  std::optional<PushingScheme> witness;
};

inline constexpr std::array<const char*, 14> kBatchColumns = {
    "graph_id", "n",     "m",      "delta",  "regular", "girth",  "mode",
    "p1_or_max", "total", "bound", "trials", "proper",  "status", "runtime_ms"};

struct BatchError {
  std::size_t line = 0;
  std::string message;
};

struct BatchOptions {
  BatchMode mode = BatchMode::greedy;
  std::uint64_t seed = 0;
  std::size_t trials = 10;
  std::size_t workers = 1;
};

struct BatchResult {
  std::vector<BatchRow> rows;
  std::vector<BatchError> errors;
};

namespace detail {

inline BatchRow run_one(std::size_t graph_id, const Graph& g, const BatchOptions& opt) {
  const auto started = std::chrono::steady_clock::now();
  BatchRow row;
  row.graph_id = graph_id;
  row.n = g.order();
  row.m = g.size();
  row.delta = g.max_degree();
  row.regular = g.is_regular();
  row.girth = girth(g);
  row.mode = to_string(opt.mode);
  row.bound = expected_total_bound(g);
  if (!is_nice(g)) {
    row.status = "not-nice";
  } else {
    try {
      switch (opt.mode) {
        case BatchMode::greedy: {
          row.trials = opt.trials;
          row.proper = true;
          std::optional<std::uint64_t> best_total, best_max;
          for (std::size_t t = 0; t < opt.trials; ++t) {
            auto run = greedy_run(g, random_ordering(g.order(), trial_seed(opt.seed, t)));
            const auto cost = scheme_cost(run.scheme);
            row.proper = row.proper && is_proper(g, run.scheme).proper;
            if (!best_total || cost.total < *best_total) {
              best_total = cost.total;
              row.witness = std::move(run.scheme);
            }
            best_max = best_max ? std::min(*best_max, cost.max) : cost.max;
          }
          if (!best_total) throw GraphError("batch_run: greedy mode needs at least one trial");
          row.total = *best_total;
          row.p1_or_max = *best_max;
          break;
        }
        case BatchMode::construct: {
          auto built = construct_scheme(g);
          if (!built) {
            row.status = "not-applicable";
            break;
          }
          const auto cost = scheme_cost(built->scheme);
          row.p1_or_max = cost.max;
          row.total = cost.total;
          row.proper = is_proper(g, built->scheme).proper;
          row.witness = std::move(built->scheme);
          break;
        }
        case BatchMode::exact_p1: {
          auto r = exact_p1(g);
          row.p1_or_max = r.value;
          row.total = scheme_cost(r.witness).total;
          row.proper = is_proper(g, r.witness).proper;
          row.witness = std::move(r.witness);
          if (r.status != ExactStatus::optimal) row.status = to_string(r.status);
          break;
        }
      }
    } catch (const std::exception&) {
      row.status = "failed";
      row.proper = false;
    }
  }
  row.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return row;
}

}  // namespace detail

/// One row per parsed graph, in input order. Unparseable lines are listed in
/// `errors` and skipped; blank lines are ignored.
inline BatchResult batch_run(std::istream& in, const BatchOptions& options) {
  BatchResult result;
  std::vector<std::pair<std::size_t, Graph>> graphs;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      graphs.emplace_back(line_no, parse_graph6(line));
    } catch (const ParseError& e) {
      result.errors.push_back({line_no, e.what()});
    } catch (const GraphError& e) {
      result.errors.push_back({line_no, e.what()});
    }
  }

  result.rows.resize(graphs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < graphs.size(); i = next++)
      result.rows[i] = detail::run_one(graphs[i].first, graphs[i].second, options);
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, graphs.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return result;
}

inline BatchResult batch_run(const std::string& graph6_text, const BatchOptions& options) {
  std::istringstream in(graph6_text);
  return batch_run(in, options);
}

inline std::string batch_csv(const std::vector<BatchRow>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < kBatchColumns.size(); ++i) out << (i ? "," : "") << kBatchColumns[i];
  out << '\n';
  for (const auto& r : rows) {
    out << r.graph_id << ',' << r.n << ',' << r.m << ',' << r.delta << ',' << (r.regular ? 1 : 0) << ','
        << (r.girth ? std::to_string(*r.girth) : "inf") << ',' << r.mode << ',' << r.p1_or_max << ','
        << r.total << ',' << to_string(r.bound) << ',' << r.trials << ',' << (r.proper ? 1 : 0) << ','
        << r.status << ',' << std::fixed << std::setprecision(3) << r.runtime_ms << '\n';
  }
  return out.str();
}

/// Witness sidecar: one line "graph_id rho: v0 v1 ..." per row with a scheme.
inline std::string witness_lines(const std::vector<BatchRow>& rows) {
  std::string out;
  for (const auto& r : rows)
    if (r.witness) out += std::to_string(r.graph_id) + " " + format_scheme(*r.witness) + "\n";
  return out;
}

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads the CSV written by batch_csv.
inline std::vector<BatchRow> parse_batch_csv(std::istream& in) {
  std::vector<BatchRow> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  std::string expected;
  for (std::size_t i = 0; i < kBatchColumns.size(); ++i) expected += std::string(i ? "," : "") + kBatchColumns[i];
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected) throw ReportError("batch CSV: unexpected header");
  for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream fields(line);
    for (std::string cell; std::getline(fields, cell, ',');) f.push_back(cell);
    if (f.size() != kBatchColumns.size())
      throw ReportError("batch CSV line " + std::to_string(line_no) + ": wrong column count");
    try {
      BatchRow r;
      r.graph_id = std::stoull(f[0]);
      r.n = std::stoull(f[1]);
      r.m = std::stoull(f[2]);
      r.delta = std::stoull(f[3]);
      r.regular = f[4] == "1";
      if (f[5] != "inf") r.girth = std::stoull(f[5]);
      r.mode = f[6];
      r.p1_or_max = std::stoull(f[7]);
      r.total = std::stoull(f[8]);
      r.bound = parse_rational(f[9]);
      r.trials = std::stoull(f[10]);
      r.proper = f[11] == "1";
      r.status = f[12];
      r.runtime_ms = std::stod(f[13]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ReportError("batch CSV line " + std::to_string(line_no) + ": malformed field");
    }
  }
  return rows;
}

struct AverageReport {
  std::size_t rows = 0;
  double mean_total_per_n = 0.0;
  double mean_max = 0.0;
  /// Fraction of rows with max push value <= Delta.
  double fraction_max_within_delta = 0.0;
};

/// Means over the rows with status ok.
inline AverageReport average_report(const std::vector<BatchRow>& rows) {
  AverageReport r;
  double ratio = 0.0, max_sum = 0.0, within = 0.0;
  for (const auto& row : rows) {
    if (row.status != "ok" || row.n == 0) continue;
    ++r.rows;
    ratio += static_cast<double>(row.total) / static_cast<double>(row.n);
    max_sum += static_cast<double>(row.p1_or_max);
    if (row.p1_or_max <= row.delta) within += 1.0;
  }
  if (r.rows == 0) throw ReportError("average_report: no successful rows");
  const auto k = static_cast<double>(r.rows);
  r.mean_total_per_n = ratio / k;
  r.mean_max = max_sum / k;
  r.fraction_max_within_delta = within / k;
  return r;
}

// ---------------------------------------------------------------------------
// Conjecture checker: look for a scheme with max push value <= Delta.

enum class Verdict { holds_witnessed, undecided };

inline const char* to_string(Verdict v) {
  return v == Verdict::holds_witnessed ? "holds-witnessed" : "undecided";
}

struct ConjectureResult {
  Verdict verdict = Verdict::undecided;
  std::optional<PushingScheme> witness;
  std::string method;
};

struct ConjectureOptions {
  std::size_t budget = 10;
  std::uint64_t seed = 0;
  /// The cap search is attempted only up to this order.
  std::size_t exact_max_order = 16;
  std::uint64_t exact_node_limit = 50'000'000;
};

inline ConjectureResult conjecture_check(const Graph& g, const ConjectureOptions& options = {}) {
  if (!is_nice(g)) throw GraphError("conjecture_check: graph has a component of order two");
  const std::size_t delta = g.max_degree();
  const auto accept = [&](const PushingScheme& s) {
    return is_proper(g, s).proper && scheme_cost(s).max <= delta;
  };
  if (auto built = construct_scheme(g); built && accept(built->scheme))
    return {Verdict::holds_witnessed, std::move(built->scheme), "construction:" + built->method};
  for (std::size_t t = 0; t < options.budget; ++t) {
    auto run = greedy_run(g, random_ordering(g.order(), trial_seed(options.seed, t)));
    if (accept(run.scheme)) return {Verdict::holds_witnessed, std::move(run.scheme), "greedy"};
  }
  if (g.order() <= options.exact_max_order) {
    auto r = search_with_cap(g, static_cast<PushValue>(delta), options.exact_node_limit);
    if (r.scheme && accept(*r.scheme)) return {Verdict::holds_witnessed, std::move(*r.scheme), "cap-search"};
  }
  return {Verdict::undecided, std::nullopt, "none"};
}

// ---------------------------------------------------------------------------
// Cubic girth >= 5: permutation classes of the radius-2 tree around a vertex

struct PermClassCounts {
  std::uint64_t s1 = 0;
  std::uint64_t s2 = 0;
  std::uint64_t s3 = 0;
  std::uint64_t total = 0;  // 10!

  Rational fraction1() const { return Rational(static_cast<std::int64_t>(s1), static_cast<std::int64_t>(total)); }
  Rational fraction2() const { return Rational(static_cast<std::int64_t>(s2), static_cast<std::int64_t>(total)); }
  Rational fraction3() const { return Rational(static_cast<std::int64_t>(s3), static_cast<std::int64_t>(total)); }

  /// (3/4)(|S1| + |S2|)/10! + 2|S3|/10!, a lower bound on E[t_i].
  Rational bound() const { return Rational(3, 4) * (fraction1() + fraction2()) + 2 * fraction3(); }
};

/// Exhaustive count over all 10! orderings of u (0), its neighbors v1..v3
/// (1..3) and their other neighbors v_{i,1}, v_{i,2} (2i+2, 2i+3).
///   S1: exactly one v_i precedes u, and both v_{i,*} precede v_i.
///   S2: exactly one v_i precedes u, one v_{i,*} precedes v_i and the other
///       lies between v_i and u.
///   S3: all v_i precede u and all six v_{i,*} follow u.
inline PermClassCounts perm_oracle() {
  constexpr int kU = 0;
  std::array<int, 10> order{};
  std::iota(order.begin(), order.end(), 0);
  std::array<int, 10> pos{};
  PermClassCounts c;
  do {
    for (int p = 0; p < 10; ++p) pos[order[p]] = p;
    ++c.total;
    int before = 0, which = 0;
    for (int i = 1; i <= 3; ++i)
      if (pos[i] < pos[kU]) {
        ++before;
        which = i;
      }
    if (before == 1) {
      const int a = pos[2 * which + 2], b = pos[2 * which + 3], v = pos[which], u = pos[kU];
      if (a < v && b < v) {
        ++c.s1;
      } else if ((a < v && v < b && b < u) || (b < v && v < a && a < u)) {
        ++c.s2;
      }
    } else if (before == 3) {
      bool all_after = true;
      for (int x = 4; x < 10; ++x) all_after = all_after && pos[x] > pos[kU];
      if (all_after) ++c.s3;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return c;
}

/// (3.5 - 23/840) n for cubic graphs of girth at least 5.
inline Rational girth5_bound(const Graph& g) {
  if (g.order() == 0) return 0;
  if (!is_cubic(g)) throw GraphError("girth5_bound: graph is not cubic");
  const auto gi = girth(g);
  if (gi && *gi < 5) throw GraphError("girth5_bound: girth is below 5");
  return (Rational(7, 2) - Rational(23, 840)) * static_cast<std::int64_t>(g.order());
}

}  // namespace pushing
