// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pushing/constructions.hpp"
#include "pushing/exact.hpp"
#include "pushing/experiment.hpp"
#include "pushing/families.hpp"
#include "pushing/greedy.hpp"

using namespace pushing;
namespace fam = pushing::families;

namespace {

std::vector<std::string> lines_of(const std::string& name) {
  std::ifstream in(std::string(PUSHING_DATA_DIR) + "/" + name);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  if (out.empty()) throw std::runtime_error("missing corpus " + name);
  return out;
}

std::vector<Graph> corpus(const std::string& name, std::size_t max_order = 1000) {
  std::vector<Graph> out;
  for (const auto& line : lines_of(name)) {
    Graph g = parse_graph6(line);
    if (g.order() <= max_order) out.push_back(std::move(g));
  }
  return out;
}

// Runs body(i) for i in [0, count) on all hardware threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::mutex mu;

  void fail(const std::string& why) {
    std::lock_guard lock(mu);
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void run(int id, const char* name, const std::function<void(Outcome&, std::string&)>& body) {
  Outcome out;
  std::string summary;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out, summary);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s  %2d  %-28s %s%s(%.1fs)\n", out.pass ? "PASS" : "FAIL", id, name, summary.c_str(),
              summary.empty() ? "" : " ", secs);
  if (!out.pass) {
    std::printf("      reason: %s\n", out.detail.c_str());
    ++failures;
  }
  std::fflush(stdout);
}

std::string str(const Graph& g) { return encode_graph6(g); }

std::vector<Graph> cubic_graphs() {
  auto gs = corpus("cubic_connected_n4-14.g6");
  for (auto g : {fam::complete(4), fam::complete_bipartite(3, 3), fam::petersen(), fam::prism(),
                 fam::mobius_kantor()})
    gs.push_back(std::move(g));
  return gs;
}

}  // namespace

int main() {
  run(1, "cubic max <= 3", [](Outcome& o, std::string& s) {
    const auto gs = cubic_graphs();
    parallel_for(gs.size(), [&](std::size_t i) {
      const auto scheme = cubic_scheme(gs[i]);
      if (!is_proper(gs[i], scheme)) o.fail("improper scheme on " + str(gs[i]));
      if (scheme_cost(scheme).max > 3) o.fail("max > 3 on " + str(gs[i]));
    });
    s = std::to_string(gs.size()) + " graphs";
  });

  run(2, "sigma table", [](Outcome& o, std::string& s) {
    const auto gs = cubic_graphs();
    std::atomic<std::size_t> components{0}, fallback{0}, y0{0}, violations{0};
    parallel_for(gs.size(), [&](std::size_t i) {
      const auto r = cubic_scheme_detailed(gs[i]);
      for (const auto& comp : r.components) {
        if (comp.method == CubicMethod::bfs_mod3_fallback || comp.method == CubicMethod::exact_fallback) ++fallback;
        if (!comp.decomposition) continue;
        ++components;
        const Graph h = gs[i].induced(comp.vertices);
        PushingScheme local(comp.vertices.size());
        for (std::size_t k = 0; k < comp.vertices.size(); ++k) local[k] = r.scheme[comp.vertices[k]];
        const auto sigma = sigma_values(h, local);
        const auto bad = sigma_table_violations(h, *comp.decomposition, sigma);
        violations += bad.size();
        if (!bad.empty()) o.fail(str(gs[i]) + ": " + bad.front());
        for (std::size_t k = 0; k < h.order(); ++k)
          if (comp.decomposition->classes[k] == CubicClass::YZero) ++y0;
      }
    });
    s = std::to_string(components.load()) + " decomposed components, " + std::to_string(y0.load()) +
        " Y0 vertices, " + std::to_string(fallback.load()) + " fallback, " + std::to_string(violations.load()) +
        " violations";
  });

  run(3, "bipartite regular", [](Outcome& o, std::string& s) {
    for (const Graph& g : {fam::hypercube(4), fam::complete_bipartite(4, 4), fam::complete_bipartite(5, 5),
                           fam::torus(4, 4), fam::crown(5)}) {
      const auto scheme = bipartite_regular_scheme(g, 0);
      const std::uint64_t d = g.max_degree();
      if (!is_proper(g, scheme)) o.fail("improper on " + str(g));
      if (scheme_cost(scheme).max != d) o.fail("max != Delta on " + str(g));
      if (sigma_values(g, scheme)[0] != d * d + 2 * d) o.fail("sigma(root) != Delta^2 + 2 Delta on " + str(g));
    }
    s = "5 graphs";
  });

  run(4, "exact values", [](Outcome& o, std::string& s) {
    if (exact_p1(fam::complete(4)).value != 3) o.fail("P1(K4) != 3");
    if (exact_p1(fam::complete_bipartite(3, 3)).value != 1) o.fail("P1(K33) != 1");
    if (exact_p1(fam::complete_bipartite(4, 4)).value != 1) o.fail("P1(K44) != 1");
    const auto k4 = exact_pt(fam::complete(4)).value, c4 = exact_pt(fam::cycle(4)).value;
    if (k4 != 6 || enumerate_oracle(fam::complete(4), 6).pt != 6u) o.fail("Pt(K4) != 6");
    if (c4 != 1 || enumerate_oracle(fam::cycle(4), 3).pt != 1u) o.fail("Pt(C4) != 1");
    s = "P1: 3 1 1, Pt: " + std::to_string(k4) + " " + std::to_string(c4);
  });

  run(5, "oracle equivalence", [](Outcome& o, std::string& s) {
    std::vector<Graph> gs;
    for (auto& g : corpus("all_graphs_n1-6.g6"))
      if (is_nice(g)) gs.push_back(std::move(g));
    std::atomic<std::uint64_t> checked{0};
    parallel_for(gs.size(), [&](std::size_t i) {
      const Graph& g = gs[i];
      const auto p1 = exact_p1(g), pt = exact_pt(g);
      if (p1.status != ExactStatus::optimal || pt.status != ExactStatus::optimal) {
        o.fail("solver not optimal on " + str(g));
        return;
      }
      // Both optima have a witness with every value <= Pt.
      const auto ref = enumerate_oracle(g, static_cast<PushValue>(pt.value));
      checked += ref.schemes_checked;
      if (ref.p1 != p1.value || ref.pt != pt.value)
        o.fail(str(g) + ": solver (" + std::to_string(p1.value) + "," + std::to_string(pt.value) +
               ") vs oracle");
    });
    s = std::to_string(gs.size()) + " nice graphs, " + std::to_string(checked.load()) + " schemes enumerated";
  });

  run(6, "greedy bounds", [](Outcome& o, std::string& s) {
    std::vector<Graph> gs;
    for (const char* name : {"all_graphs_n1-6.g6", "cubic_connected_n4-14.g6", "quartic_connected_n5-12.g6",
                             "regular_connected_n3-10.g6"})
      for (auto& g : corpus(name, 12))
        if (is_nice(g)) gs.push_back(std::move(g));
    std::atomic<std::uint64_t> runs{0};
    parallel_for(gs.size(), [&](std::size_t i) {
      const Graph& g = gs[i];
      const std::size_t delta = g.max_degree();
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto r = greedy_run(g, random_ordering(g.order(), seed));
        ++runs;
        if (!is_proper(g, r.scheme)) o.fail("improper on " + str(g));
        for (const auto& step : r.trace.steps) {
          if (step.g > step.s1 + step.s2) o.fail("g > s1 + s2 on " + str(g));
          if (step.s1 + step.s2 > delta * delta) o.fail("s1 + s2 > Delta^2 on " + str(g));
          if (g.degree(step.vertex) <= 1 && step.g != 0) o.fail("low-degree vertex pushed on " + str(g));
        }
      }
    });
    s = std::to_string(gs.size()) + " graphs, " + std::to_string(runs.load()) + " runs";
  });

  run(7, "expectation bound", [](Outcome& o, std::string& s) {
    // From each of the cubic and quartic corpora: five evenly spaced graphs
    // and five evenly spaced triangle-free graphs.
    std::vector<Graph> gs;
    for (const char* name : {"cubic_connected_n4-14.g6", "quartic_connected_n5-12.g6"}) {
      const auto all = corpus(name);
      std::vector<Graph> tf;
      for (const auto& g : all)
        if (girth(g).value_or(4) > 3) tf.push_back(g);
      for (std::size_t k = 0; k < 5; ++k) {
        gs.push_back(all[k * (all.size() - 1) / 4]);
        gs.push_back(tf[k * (tf.size() - 1) / 4]);
      }
    }
    std::atomic<std::size_t> triangle_free{0};
    double worst = -1e9;
    std::mutex mu;
    parallel_for(gs.size(), [&](std::size_t i) {
      const Graph& g = gs[i];
      const bool tf = girth(g).value_or(4) > 3;
      if (tf) ++triangle_free;
      constexpr std::size_t kOrderings = 2000;
      double sum = 0, sq = 0;
      for (std::uint64_t seed = 0; seed < kOrderings; ++seed) {
        const auto ord = random_ordering(g.order(), derive_seed(0xACCE, seed));
        const auto r = greedy_run(g, ord);
        std::uint64_t s12 = 0, s2 = 0;
        for (const auto& st : r.trace.steps) {
          s12 += st.s1 + st.s2;
          s2 += st.s2;
        }
        sum += static_cast<double>(s12);
        sq += static_cast<double>(s12) * static_cast<double>(s12);
        if (tf) {
          std::vector<std::size_t> pos(g.order());
          for (std::size_t k = 0; k < ord.size(); ++k) pos[ord.perm[k]] = k;
          std::uint64_t identity = 0;
          for (Vertex v = 0; v < g.order(); ++v) {
            std::uint64_t minus = 0;
            for (Vertex w : g.neighbors(v)) minus += pos[w] < pos[v];
            const std::uint64_t plus = g.degree(v) - minus;
            identity += minus * plus + plus * (plus == 0 ? 0 : plus - 1) / 2;
          }
          if (identity != s2) o.fail("second-neighbor identity fails on " + str(g));
        }
      }
      const double mean = sum / kOrderings;
      const double se = std::sqrt(std::max(0.0, sq / kOrderings - mean * mean) / (kOrderings - 1));
      const double bound = boost::rational_cast<double>(expected_total_bound(g));
      if (mean > bound + 3 * se) o.fail(str(g) + ": mean " + std::to_string(mean) + " > bound + 3 SE");
      std::lock_guard lock(mu);
      worst = std::max(worst, (mean - bound) / std::max(se, 1e-12));
    });
    char buf[96];
    std::snprintf(buf, sizeof buf, "20 graphs (%zu triangle-free), max (mean-bound)/SE = %.2f", triangle_free.load(),
                  worst);
    s = buf;
  });

  run(8, "permutation oracle", [](Outcome& o, std::string& s) {
    const auto c = perm_oracle();
    if (c.fraction1() != Rational(1, 60)) o.fail("S1 fraction " + to_string(c.fraction1()));
    if (c.fraction2() != Rational(1, 60)) o.fail("S2 fraction " + to_string(c.fraction2()));
    if (c.fraction3() != Rational(1, 840)) o.fail("S3 fraction " + to_string(c.fraction3()));
    if (c.bound() != Rational(23, 840)) o.fail("bound " + to_string(c.bound()));
    s = to_string(c.fraction1()) + " " + to_string(c.fraction2()) + " " + to_string(c.fraction3()) + " -> " +
        to_string(c.bound());
  });

  run(9, "empirical averages", [](Outcome& o, std::string& s) {
    const auto batch = [](const std::string& name, auto keep) {
      std::string text;
      for (const auto& line : lines_of(name))
        if (keep(parse_graph6(line).order())) text += line + "\n";
      return batch_run(text, {.mode = BatchMode::greedy, .seed = 2024, .trials = 10,
                              .workers = std::max(1u, std::thread::hardware_concurrency())});
    };
    const auto cubic = batch("cubic_connected_n4-14.g6", [](std::size_t n) { return n >= 10; });
    const auto quartic = batch("quartic_connected_n5-12.g6", [](std::size_t) { return true; });
    const auto a = average_report(cubic.rows), b = average_report(quartic.rows);
    if (a.rows != cubic.rows.size() || b.rows != quartic.rows.size()) o.fail("some batch rows not ok");
    if (a.mean_total_per_n < 0.45 || a.mean_total_per_n > 0.85) o.fail("cubic best-of-10 mean out of [0.45, 0.85]");
    if (b.mean_total_per_n < 0.45 || b.mean_total_per_n > 0.9) o.fail("quartic best-of-10 mean out of [0.45, 0.9]");

    // The same orderings, averaged per run instead of taking the best.
    const auto per_run = [](const std::string& name, std::size_t min_order) {
      double sum = 0;
      std::size_t runs = 0;
      for (const auto& g : corpus(name)) {
        if (g.order() < min_order) continue;
        for (std::size_t t = 0; t < 10; ++t) {
          const auto r = greedy_run(g, random_ordering(g.order(), trial_seed(2024, t)));
          sum += static_cast<double>(scheme_cost(r.scheme).total) / static_cast<double>(g.order());
          ++runs;
        }
      }
      return sum / static_cast<double>(runs);
    };
    const double ca = per_run("cubic_connected_n4-14.g6", 10), qa = per_run("quartic_connected_n5-12.g6", 0);
    if (ca < 0.45 || ca > 0.85) o.fail("cubic per-run mean out of [0.45, 0.85]");
    if (qa < 0.45 || qa > 0.9) o.fail("quartic per-run mean out of [0.45, 0.9]");
    char buf[160];
    std::snprintf(buf, sizeof buf, "best of 10: cubic %.4f (%zu), quartic %.4f (%zu); per run: cubic %.4f, quartic %.4f",
                  a.mean_total_per_n, a.rows, b.mean_total_per_n, b.rows, ca, qa);
    s = buf;
  });

  run(10, "conjecture check", [](Outcome& o, std::string& s) {
    const auto gs = corpus("quartic_connected_n5-12.g6", 12);
    std::atomic<std::size_t> undecided{0}, by_construction{0}, by_greedy{0}, by_search{0};
    parallel_for(gs.size(), [&](std::size_t i) {
      const auto r = conjecture_check(gs[i]);
      if (r.verdict != Verdict::holds_witnessed) {
        ++undecided;
        o.fail("undecided on " + str(gs[i]));
        return;
      }
      if (!is_proper(gs[i], *r.witness) || scheme_cost(*r.witness).max > 4) o.fail("bad witness on " + str(gs[i]));
      if (r.method.starts_with("construction")) ++by_construction;
      else if (r.method == "greedy") ++by_greedy;
      else ++by_search;
    });
    s = std::to_string(gs.size()) + " graphs: " + std::to_string(by_construction.load()) + " construction, " +
        std::to_string(by_greedy.load()) + " greedy, " + std::to_string(by_search.load()) + " cap search, " +
        std::to_string(undecided.load()) + " undecided";
  });

  run(11, "delta^2 - 1 scheme", [](Outcome& o, std::string& s) {
    std::vector<Graph> gs;
    for (auto& g : corpus("regular_connected_n3-10.g6", 10))
      if (!is_balanced_complete_bipartite(g)) gs.push_back(std::move(g));
    std::mutex mu;
    std::vector<std::string> retries;
    parallel_for(gs.size(), [&](std::size_t i) {
      const Graph& g = gs[i];
      const auto d = g.max_degree();
      const auto r = delta_sq_minus_one_scheme(g);
      if (!is_proper(g, r.scheme)) o.fail("improper on " + str(g));
      if (scheme_cost(r.scheme).max > d * d - 1) o.fail("max > Delta^2 - 1 on " + str(g));
      if (r.retry_used) {
        std::lock_guard lock(mu);
        retries.push_back(str(g) + " (vertex " + std::to_string(*r.retry_vertex) + " -> " +
                          std::to_string(*r.retry_value) + ")");
      }
    });
    std::sort(retries.begin(), retries.end());
    s = std::to_string(gs.size()) + " graphs, " + std::to_string(retries.size()) + " retries";
    for (const auto& line : retries) std::printf("      retry: %s\n", line.c_str());
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
