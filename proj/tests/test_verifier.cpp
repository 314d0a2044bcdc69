#include <gtest/gtest.h>

#include "dfo/generators.hpp"
#include "dfo/verifier.hpp"
#include "fixtures.hpp"

using namespace dfo;
using dfo::testing::edge;

TEST(Brute, FixtureDistances) {
  Graph c5 = dfo::testing::c5();
  EXPECT_EQ(brute_dist(c5, 0, 2, FaultSet{edge(c5, 0, 1)}), 3);
  EXPECT_EQ(brute_dist(c5, 0, 2, FaultSet{edge(c5, 0, 1), edge(c5, 3, 4)}), kInfHops);
  Graph k4 = dfo::testing::k4();
  EXPECT_EQ(brute_dist(k4, 0, 1, FaultSet{edge(k4, 0, 1), edge(k4, 0, 2)}), 2);
  EXPECT_EQ(brute_bfs(dfo::testing::p4(), 0, FaultSet{}), (std::vector<Hops>{0, 1, 2, 3}));
}

TEST(Brute, PathEdgesFormAShortestPath) {
  Graph g = make_gnp(30, 0.12, 4);
  for (const FaultSet& f : {FaultSet{}, FaultSet{0, 5}, FaultSet{3}}) {
    for (Vertex t = 0; t < g.n(); ++t) {
      std::vector<EdgeId> path = brute_path_edges(g, 0, t, f);
      const Hops d = brute_dist(g, 0, t, f);
      if (d == kInfHops) {
        EXPECT_TRUE(path.empty());
        continue;
      }
      ASSERT_EQ(static_cast<Hops>(path.size()), d);
      Vertex at = 0;
      for (EdgeId e : path) {
        EXPECT_FALSE(f.contains(e));
        at = g.edge(e).other(at);
      }
      EXPECT_EQ(at, t);
    }
  }
}

TEST(Brute, Symmetric) {
  Graph g = make_gnp(20, 0.2, 8);
  for (const FaultSet& f : all_fault_sets(g, 1)) {
    for (Vertex s = 0; s < g.n(); ++s) {
      for (Vertex t = 0; t < g.n(); ++t) ASSERT_EQ(brute_dist(g, s, t, f), brute_dist(g, t, s, f));
    }
  }
}

TEST(Brute, FaultSetEnumeration) {
  Graph k4 = dfo::testing::k4();
  EXPECT_EQ(all_fault_sets(k4, 0).size(), 1u);
  EXPECT_EQ(all_fault_sets(k4, 1).size(), 7u);
  EXPECT_EQ(all_fault_sets(k4, 2).size(), 22u);
}

TEST(Report, ExhaustiveOnFixtures) {
  for (Graph g : {dfo::testing::p4(), dfo::testing::c5(), dfo::testing::k4()}) {
    auto o = dfo::testing::build(g);
    VerificationReport r = verify_exhaustive(*o, VerifyLimits{});
    EXPECT_EQ(r.queries, static_cast<std::uint64_t>(g.n()) * (g.n() - 1) * all_fault_sets(g, 2).size());
    EXPECT_EQ(r.matches, r.queries);
    EXPECT_EQ(r.soundness.violations, 0u);
    EXPECT_TRUE(r.failures.empty());
  }
}

TEST(Report, JsonRoundTripAndMerge) {
  Graph g = make_gnp(12, 0.3, 1);
  auto o = dfo::testing::build(g);
  VerificationReport a = verify_exhaustive(*o, VerifyLimits{}, "gnp12");
  EXPECT_GT(a.trapezoid.checks + a.trapezoid.skipped, 0u);
  VerificationReport back = VerificationReport::from_json(a.to_json());
  EXPECT_EQ(back.to_json(), a.to_json());
  EXPECT_EQ(back.summary(), a.summary());

  VerificationReport m = a;
  m.merge(a);
  EXPECT_EQ(m.queries, 2 * a.queries);
  EXPECT_EQ(m.trapezoid.checks, 2 * a.trapezoid.checks);
  EXPECT_EQ(m.trapezoid.skipped, 2 * a.trapezoid.skipped);
  EXPECT_EQ(m.probe_max, a.probe_max);
  EXPECT_EQ(m.failures.empty(), a.matches == a.queries);
}

TEST(Report, FailuresAreRecorded) {
  VerificationReport r;
  r.queries = 3;
  r.matches = 2;
  r.mismatches = 1;
  r.failures.push_back(Failure{0, 2, {1, 3}, 3, 2});
  nlohmann::json j = r.to_json();
  VerificationReport back = VerificationReport::from_json(j);
  ASSERT_EQ(back.failures.size(), 1u);
  EXPECT_EQ(back.failures[0].faults, (std::vector<EdgeId>{1, 3}));
  EXPECT_EQ(back.failures[0].expected, 3);
  EXPECT_EQ(back.failures[0].got, 2);
}

TEST(Report, SingleFaultService) {
  Graph g = make_grid(5, 5);
  auto o = dfo::testing::build(g);
  VerificationReport r = verify_single_fault(*o, "grid5");
  EXPECT_EQ(r.queries, static_cast<std::uint64_t>(g.n()) * (g.n() - 1) * g.m());
  EXPECT_EQ(r.matches, r.queries);
}
