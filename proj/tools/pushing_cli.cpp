// Command-line front end for the pushing-scheme library.
//
// Exit codes: 0 success, 1 negative answer (improper scheme, undecided,
// bound not met), 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "pushing/constructions.hpp"
#include "pushing/exact.hpp"
#include "pushing/experiment.hpp"
#include "pushing/graph.hpp"
#include "pushing/greedy.hpp"
#include "pushing/scheme.hpp"

namespace {

using namespace pushing;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

struct GraphSource {
  std::string edge_list_path;
  std::string graph6_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--graph", edge_list_path, "Edge-list file");
    cmd->add_option("--graph6", graph6_path, "graph6 file (first record is used)");
  }

  Graph load() const {
    if (edge_list_path.empty() == graph6_path.empty())
      throw UsageError("exactly one of --graph or --graph6 is required");
    if (!edge_list_path.empty()) {
      auto parsed = parse_edge_list(read_file(edge_list_path));
      if (parsed.duplicate_edges > 0)
        std::cerr << "warning: " << parsed.duplicate_edges << " duplicate edge(s) collapsed\n";
      return std::move(parsed.graph);
    }
    std::istringstream in(read_file(graph6_path));
    std::string line;
    while (std::getline(in, line))
      if (line.find_first_not_of(" \t\r") != std::string::npos) return parse_graph6(line);
    throw UsageError(graph6_path + " contains no graph6 record");
  }
};

void print_scheme(const Graph& g, const PushingScheme& s) {
  const auto cost = scheme_cost(s);
  std::cout << format_scheme(s) << "\nmax: " << cost.max << "\ntotal: " << cost.total << "\n";
  const auto sigma = sigma_values(g, s);
  std::cout << "sigma:";
  for (auto v : sigma) std::cout << ' ' << v;
  std::cout << "\n";
}

nlohmann::json row_json(const BatchRow& r) {
  nlohmann::json j;
  j["graph_id"] = r.graph_id;
  j["n"] = r.n;
  j["m"] = r.m;
  j["delta"] = r.delta;
  j["regular"] = r.regular;
  j["girth"] = r.girth ? nlohmann::json(*r.girth) : nlohmann::json(nullptr);
  j["mode"] = r.mode;
  j["p1_or_max"] = r.p1_or_max;
  j["total"] = r.total;
  j["bound"] = to_string(r.bound);
  j["trials"] = r.trials;
  j["proper"] = r.proper;
  j["status"] = r.status;
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proper pushing schemes: verification, greedy, constructions, exact search"};
  app.require_subcommand(1);

  GraphSource source;
  std::string scheme_text, mode_text = "greedy", emit_witness, format = "csv", ordering_text, trace_path;
  std::uint64_t seed = 0;
  std::size_t trials = 10, budget = 10, workers = std::max(1u, std::thread::hardware_concurrency());
  std::size_t root = 0;
  long long cap = -1;
  bool want_p1 = false, want_pt = false, dump = false, report = false;

  auto* verify = app.add_subcommand("verify", "Check whether a scheme is proper");
  source.attach(verify);
  verify->add_option("--scheme", scheme_text, "Push values \"v0 v1 ...\"")->required();

  auto* greedy = app.add_subcommand("greedy", "Run the greedy algorithm");
  source.attach(greedy);
  greedy->add_option("--ordering", ordering_text, "Explicit ordering \"u1 u2 ...\"");
  greedy->add_option("--seed", seed, "Seed for random orderings");
  greedy->add_option("--trials", trials, "Random orderings to try (best total kept)")->check(CLI::PositiveNumber);
  greedy->add_option("--trace", trace_path, "Write the per-step CSV trace of the reported run");

  auto* construct = app.add_subcommand("construct", "Cubic or regular-bipartite construction");
  source.attach(construct);
  construct->add_option("--root", root, "BFS root for the bipartite construction");
  construct->add_flag("--dump", dump, "Print 'v class layer rho sigma' for decomposed components");

  auto* exact = app.add_subcommand("exact", "Exact P1 / Pt, or cap feasibility");
  source.attach(exact);
  exact->add_flag("--p1", want_p1, "Minimum achievable maximum");
  exact->add_flag("--pt", want_pt, "Minimum achievable total");
  exact->add_option("--cap", cap, "Only decide whether all values can stay <= K");

  auto* batch = app.add_subcommand("batch", "Run a mode over every graph in a graph6 file");
  std::string batch_input;
  batch->add_option("--graph6", batch_input, "graph6 file, one graph per line ('-' for stdin)")->required();
  batch->add_option("--mode", mode_text, "greedy | construct | exact-p1");
  batch->add_option("--seed", seed, "Base seed");
  batch->add_option("--trials", trials, "Greedy orderings per graph")->check(CLI::PositiveNumber);
  batch->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  batch->add_option("--emit-witness", emit_witness, "Write 'graph_id rho: ...' lines here");
  batch->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  batch->add_flag("--report", report, "Print mean total/n, mean max and fraction max <= Delta to stderr");

  auto* average = app.add_subcommand("average", "Summarize a batch CSV");
  std::string csv_path;
  average->add_option("--csv", csv_path, "Batch CSV file")->required();

  auto* perm = app.add_subcommand("perm-oracle", "Count the girth-5 permutation classes over 10!");

  auto* conj = app.add_subcommand("conjecture", "Search for a scheme with max push value <= Delta");
  source.attach(conj);
  conj->add_option("--budget", budget, "Greedy orderings to try");
  conj->add_option("--seed", seed, "Seed for greedy orderings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) {
      const Graph g = source.load();
      const auto scheme = parse_scheme(scheme_text);
      const auto check = is_proper(g, scheme);
      const auto profile = derive_sigma(g, scheme);
      std::cout << "sigma:";
      for (auto v : profile.sigma) std::cout << ' ' << v;
      std::cout << "\n";
      if (check) {
        std::cout << "proper\n";
        return kOk;
      }
      std::cout << "improper: conflict " << check.witness->u << " " << check.witness->v << " ("
                << profile.conflicts.size() << " conflicting edge(s))\n";
      return kNegative;
    }

    if (*greedy) {
      const Graph g = source.load();
      GreedyResult best;
      if (!ordering_text.empty()) {
        VertexOrdering ord;
        std::istringstream in(ordering_text);
        for (std::size_t v; in >> v;) ord.perm.push_back(v);
        best = greedy_run(g, ord);
      } else {
        std::optional<std::uint64_t> best_total;
        for (std::size_t t = 0; t < trials; ++t) {
          auto run = greedy_run(g, random_ordering(g.order(), trial_seed(seed, t)));
          const auto total = scheme_cost(run.scheme).total;
          if (!best_total || total < *best_total) {
            best_total = total;
            best = std::move(run);
          }
        }
      }
      print_scheme(g, best.scheme);
      std::cout << "bound: " << to_string(expected_total_bound(g)) << "\n";
      if (!trace_path.empty()) write_file(trace_path, trace_csv(best.trace));
      return is_proper(g, best.scheme) ? kOk : kNegative;
    }

    if (*construct) {
      const Graph g = source.load();
      if (g.order() > 0 && g.min_degree() == 3 && g.max_degree() == 3) {
        const auto r = cubic_scheme_detailed(g);
        for (const auto& comp : r.components) {
          std::cout << "component of " << comp.vertices.size() << " vertices: " << to_string(comp.method) << "\n";
          if (dump && comp.decomposition) {
            const Graph h = g.induced(comp.vertices);
            PushingScheme local(comp.vertices.size());
            for (std::size_t i = 0; i < comp.vertices.size(); ++i) local[i] = r.scheme[comp.vertices[i]];
            std::istringstream lines(decomposition_dump(h, *comp.decomposition, local));
            for (std::string line; std::getline(lines, line);) {
              std::istringstream f(line);
              std::size_t v;
              f >> v;
              std::string rest;
              std::getline(f, rest);
              std::cout << comp.vertices[v] << rest << "\n";
            }
          }
        }
        print_scheme(g, r.scheme);
        return kOk;
      }
      const auto scheme = bipartite_regular_scheme(g, root);
      print_scheme(g, scheme);
      return kOk;
    }

    if (*exact) {
      const Graph g = source.load();
      if (cap >= 0) {
        const auto r = search_with_cap(g, static_cast<PushValue>(cap));
        std::cout << "nodes: " << r.nodes << "\n";
        if (!r.scheme) {
          std::cout << "infeasible\n";
          return kNegative;
        }
        std::cout << "feasible\n" << format_scheme(*r.scheme) << "\n";
        return kOk;
      }
      if (!want_p1 && !want_pt) throw UsageError("exact: give --p1, --pt or --cap");
      if (want_p1) {
        const auto r = exact_p1(g);
        std::cout << "P1: " << r.value << "\nstatus: " << to_string(r.status) << "\nnodes: " << r.nodes << "\n"
                  << format_scheme(r.witness) << "\nrecord: " << exact_record(1, "P1", r) << "\n";
      }
      if (want_pt) {
        const auto r = exact_pt(g);
        std::cout << "Pt: " << r.value << "\nstatus: " << to_string(r.status) << "\nnodes: " << r.nodes << "\n"
                  << format_scheme(r.witness) << "\nrecord: " << exact_record(1, "Pt", r) << "\n";
      }
      return kOk;
    }

    if (*batch) {
      const auto mode = parse_batch_mode(mode_text);
      if (!mode) throw UsageError("unknown --mode " + mode_text);
      BatchOptions opt{*mode, seed, trials, workers};
      BatchResult result;
      if (batch_input == "-") {
        result = batch_run(std::cin, opt);
      } else {
        std::ifstream in(batch_input);
        if (!in) throw UsageError("cannot open " + batch_input);
        result = batch_run(in, opt);
      }
      for (const auto& e : result.errors) std::cerr << "line " << e.line << ": " << e.message << "\n";
      if (format == "json") {
        auto arr = nlohmann::json::array();
        for (const auto& r : result.rows) arr.push_back(row_json(r));
        std::cout << arr.dump(2) << "\n";
      } else {
        std::cout << batch_csv(result.rows);
      }
      if (!emit_witness.empty()) write_file(emit_witness, witness_lines(result.rows));
      if (report) {
        const auto a = average_report(result.rows);
        std::cerr << "rows: " << a.rows << "\nmean total/n: " << a.mean_total_per_n
                  << "\nmean max: " << a.mean_max << "\nfraction max <= delta: " << a.fraction_max_within_delta
                  << "\n";
      }
      for (const auto& r : result.rows)
        if (r.status == "ok" && !r.proper) return kNegative;
      return result.errors.empty() ? kOk : kUsage;
    }

    if (*average) {
      std::ifstream in(csv_path);
      if (!in) throw UsageError("cannot open " + csv_path);
      const auto a = average_report(parse_batch_csv(in));
      std::cout << "rows: " << a.rows << "\nmean total/n: " << a.mean_total_per_n << "\nmean max: " << a.mean_max
                << "\nfraction max <= delta: " << a.fraction_max_within_delta << "\n";
      return kOk;
    }

    if (*perm) {
      const auto c = perm_oracle();
      std::cout << "permutations: " << c.total << "\nS1: " << c.s1 << " (" << to_string(c.fraction1()) << ")\nS2: "
                << c.s2 << " (" << to_string(c.fraction2()) << ")\nS3: " << c.s3 << " ("
                << to_string(c.fraction3()) << ")\nbound: " << to_string(c.bound()) << "\n";
      return kOk;
    }

    if (*conj) {
      const Graph g = source.load();
      ConjectureOptions opt;
      opt.budget = budget;
      opt.seed = seed;
      const auto r = conjecture_check(g, opt);
      std::cout << to_string(r.verdict) << "\nmethod: " << r.method << "\n";
      if (r.witness) print_scheme(g, *r.witness);
      return r.verdict == Verdict::holds_witnessed ? kOk : kNegative;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kUsage;
}
