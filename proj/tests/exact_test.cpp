#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pushing/exact.hpp"
#include "pushing/families.hpp"

using namespace pushing;
namespace fam = pushing::families;

namespace {

struct BruteForce {
  std::optional<std::uint64_t> p1, pt;
};

// Odometer over [0, cap]^n using only the edge-label definition.
BruteForce brute_force(const Graph& g, std::uint32_t cap) {
  BruteForce out;
  std::vector<std::uint32_t> rho(g.order(), 0);
  const std::vector<bool> all(g.order(), true);
  while (true) {
    if (oracle::proper_on(g, rho, all)) {
      std::uint64_t mx = 0, total = 0;
      for (auto r : rho) {
        mx = std::max<std::uint64_t>(mx, r);
        total += r;
      }
      if (!out.p1 || mx < *out.p1) out.p1 = mx;
      if (!out.pt || total < *out.pt) out.pt = total;
    }
    std::size_t i = 0;
    while (i < rho.size() && rho[i] == cap) rho[i++] = 0;
    if (i == rho.size()) break;
    ++rho[i];
  }
  return out;
}

}  // namespace

TEST(CapSearch, Examples) {
  EXPECT_FALSE(feasible_with_cap(fam::complete(4), 2));
  const auto k4 = feasible_with_cap(fam::complete(4), 3);
  ASSERT_TRUE(k4);
  EXPECT_TRUE(is_proper(fam::complete(4), *k4));
  EXPECT_TRUE(feasible_with_cap(fam::path(3), 0));
  EXPECT_FALSE(feasible_with_cap(fam::cycle(4), 0));
  EXPECT_THROW(feasible_with_cap(fam::complete(2), 3), GraphError);
}

TEST(CapSearch, NodeLimitReportsIncomplete) {
  const auto r = search_with_cap(fam::complete(6), 3, 10);
  EXPECT_FALSE(r.scheme);
  EXPECT_FALSE(r.complete);
}

TEST(ExactP1, Examples) {
  const auto k4 = exact_p1(fam::complete(4));
  EXPECT_EQ(k4.value, 3u);
  EXPECT_EQ(k4.status, ExactStatus::optimal);
  EXPECT_TRUE(is_proper(fam::complete(4), k4.witness));
  EXPECT_EQ(scheme_cost(k4.witness).max, 3u);

  EXPECT_EQ(exact_p1(fam::complete_bipartite(3, 3)).value, 1u);
  EXPECT_EQ(exact_p1(fam::complete(3)).value, 2u);
  EXPECT_EQ(exact_p1(fam::path(3)).value, 0u);
  EXPECT_EQ(exact_p1(fam::complete(5)).value, 4u);
}

TEST(ExactPt, Examples) {
  EXPECT_EQ(exact_pt(fam::path(3)).value, 0u);
  const auto k4 = exact_pt(fam::complete(4));
  EXPECT_EQ(k4.value, 6u);
  EXPECT_EQ(scheme_cost(k4.witness).total, 6u);
  const auto c4 = exact_pt(fam::cycle(4));
  EXPECT_EQ(c4.value, 1u);
  EXPECT_TRUE(is_proper(fam::cycle(4), c4.witness));
  EXPECT_EQ(exact_pt(fam::complete(3)).value, 3u);
}

TEST(Oracle, Examples) {
  const auto k4 = enumerate_oracle(fam::complete(4), 3);
  EXPECT_EQ(k4.p1, 3u);
  EXPECT_EQ(k4.pt, 6u);
  EXPECT_EQ(k4.schemes_checked, 256u);
  EXPECT_FALSE(enumerate_oracle(fam::complete(4), 2).p1);
  const auto p3 = enumerate_oracle(fam::path(3), 1);
  EXPECT_EQ(p3.p1, 0u);
  EXPECT_EQ(p3.pt, 0u);
  const auto c4 = enumerate_oracle(fam::cycle(4), 2);
  EXPECT_EQ(c4.p1, 1u);
  EXPECT_EQ(c4.pt, 1u);
  EXPECT_THROW(enumerate_oracle(fam::complete(30), 3), OracleTooLarge);
}

// Exact solvers against the definition-level brute force on every nice graph
// with at most 6 vertices. A Pt-optimal scheme has every value at most Pt, so
// a box of side Pt contains one.
TEST(ExactProperties, AgreeWithBruteForceOnSmallGraphs) {
  for (const Graph& g : oracle::read_corpus("all_graphs_n1-6.g6")) {
    if (!is_nice(g)) continue;
    const auto p1 = exact_p1(g);
    const auto pt = exact_pt(g);
    ASSERT_EQ(p1.status, ExactStatus::optimal);
    ASSERT_EQ(pt.status, ExactStatus::optimal);
    EXPECT_TRUE(is_proper(g, p1.witness));
    EXPECT_TRUE(is_proper(g, pt.witness));
    EXPECT_EQ(scheme_cost(p1.witness).max, p1.value);
    EXPECT_EQ(scheme_cost(pt.witness).total, pt.value);

    const auto cap = static_cast<std::uint32_t>(std::max(p1.value, std::min<std::uint64_t>(pt.value, 6)));
    if (std::pow(cap + 1.0, static_cast<double>(g.order())) > 2e6) continue;
    const auto ref = brute_force(g, cap);
    ASSERT_TRUE(ref.p1) << encode_graph6(g);
    EXPECT_EQ(*ref.p1, p1.value) << encode_graph6(g);
    if (pt.value <= cap) { EXPECT_EQ(*ref.pt, pt.value) << encode_graph6(g); }
  }
}

// P1 <= Pt <= n P1, P1 <= max greedy, Pt <= greedy total.
TEST(ExactProperties, Sandwich) {
  for (const Graph& g : oracle::read_corpus("cubic_connected_n4-14.g6")) {
    if (g.order() > 10) continue;
    const auto p1 = exact_p1(g);
    const auto pt = exact_pt(g);
    EXPECT_LE(p1.value, pt.value);
    EXPECT_LE(pt.value, g.order() * p1.value);
    const auto greedy = greedy_run(g, random_ordering(g.order(), 1));
    const auto cost = scheme_cost(greedy.scheme);
    EXPECT_LE(p1.value, cost.max);
    EXPECT_LE(pt.value, cost.total);
  }
}

TEST(ExactProperties, FeasibilityIsMonotoneInCap) {
  for (const Graph& g : {fam::complete(4), fam::petersen(), fam::cycle(5), fam::prism()}) {
    const auto p1 = exact_p1(g).value;
    for (PushValue k = 0; k <= p1 + 2; ++k)
      EXPECT_EQ(feasible_with_cap(g, k).has_value(), k >= p1) << k;
  }
}

TEST(ExactRecord, Format) {
  ExactResult r;
  r.value = 3;
  r.nodes = 17;
  r.witness = PushingScheme{0, 1, 2, 3};
  EXPECT_EQ(exact_record(5, "P1", r), "5,P1,3,17,0 1 2 3");
}
