#include <gtest/gtest.h>

#include <algorithm>

#include "dfo/generators.hpp"
#include "dfo/spt.hpp"
#include "dfo/verifier.hpp"
#include "fixtures.hpp"

using namespace dfo;
using dfo::testing::edge;

namespace {

Vertex naive_lca(const ShortestPathTree& t, Vertex u, Vertex v) {
  while (t.dist_h[u] > t.dist_h[v]) u = t.parent[u];
  while (t.dist_h[v] > t.dist_h[u]) v = t.parent[v];
  while (u != v) {
    u = t.parent[u];
    v = t.parent[v];
  }
  return u;
}

bool scan_prefix(const Graph& g, const ShortestPathTree& t, Vertex x, const FaultSet& f) {
  std::vector<Vertex> path = tree_path(t, x);
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    for (EdgeId e : f) {
      if (g.edge(e).u == path[i] || g.edge(e).v == path[i]) return false;
    }
  }
  return true;
}

bool scan_subtree(const Graph& g, const ShortestPathTree& t, Vertex x, const FaultSet& f) {
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!t.reachable(v)) continue;
    std::vector<Vertex> path = tree_path(t, v);
    if (std::find(path.begin(), path.end(), x) == path.end()) continue;
    for (EdgeId e : f) {
      if (g.edge(e).u == v || g.edge(e).v == v) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Spt, FixtureDistances) {
  auto c5 = perturb(dfo::testing::c5(), 1);
  auto [t, lca] = build_spt(c5, 0);
  EXPECT_EQ(t.dist_h, (std::vector<Hops>{0, 1, 2, 2, 1}));

  auto p4 = perturb(dfo::testing::p4(), 1);
  auto [tp, lp] = build_spt(p4, 0);
  EXPECT_EQ(tp.parent[3], 2);
  EXPECT_EQ(tp.parent[2], 1);
  EXPECT_EQ(tp.parent[1], 0);
  EXPECT_EQ(tp.parent[0], 0);
  EXPECT_EQ(lp.lca(2, 3), 2);

  auto k4 = perturb(dfo::testing::k4(), 1);
  auto [tk, lk] = build_spt(k4, 0);
  for (Vertex v = 1; v < 4; ++v) EXPECT_EQ(tk.dist_h[v], 1);
}

TEST(Spt, C5LcaAcrossBranches) {
  auto pg = perturb(dfo::testing::c5(), 1);
  auto [t, lca] = build_spt(pg, 0);
  // 2 hangs under 1 and 3 under 4 in every tie-free tree of C5 from 0.
  EXPECT_EQ(t.parent[2], 1);
  EXPECT_EQ(t.parent[3], 4);
  EXPECT_EQ(lca.lca(2, 3), 0);
  EXPECT_EQ(lca.lca(3, 3), 3);
}

TEST(Spt, HopDistancesMatchBfs) {
  for (std::uint64_t seed : {1, 2, 3}) {
    Graph g = make_gnp(40, 0.12, seed, false);
    auto pg = perturb(g, seed);
    BaseTrees trees = build_all_spts(pg);
    for (Vertex s = 0; s < g.n(); ++s) {
      std::vector<Hops> bfs = brute_bfs(g, s, FaultSet{});
      for (Vertex t = 0; t < g.n(); ++t) {
        EXPECT_EQ(trees[s].dist_h[t], bfs[t]);
        if (bfs[t] != kInfHops) {
          EXPECT_EQ(trees[s].dist_h[t], pg.hops(trees[s].dist_w[t]));
        }
      }
    }
  }
}

TEST(Spt, DistancesStrictlyIncreaseDownTheTree) {
  Graph g = make_gnp(30, 0.2, 8);
  auto pg = perturb(g, 3);
  BaseTrees trees = build_all_spts(pg);
  for (Vertex s = 0; s < g.n(); ++s) {
    for (Vertex v = 0; v < g.n(); ++v) {
      if (v == s || !trees[s].reachable(v)) continue;
      EXPECT_LT(trees[s].dist_w[trees[s].parent[v]], trees[s].dist_w[v]);
    }
  }
}

TEST(Spt, LcaAgreesWithNaiveWalk) {
  Graph g = make_gnp(64, 0.08, 4);
  auto pg = perturb(g, 5);
  BaseTrees trees = build_all_spts(pg);
  for (Vertex s = 0; s < g.n(); s += 7) {
    for (Vertex u = 0; u < g.n(); ++u) {
      for (Vertex v = 0; v < g.n(); ++v) {
        ASSERT_EQ(trees.lca[s].lca(u, v), naive_lca(trees[s], u, v));
      }
    }
  }
}

TEST(Spt, LcaRejectsUnreachable) {
  Graph g(3);
  g.add_edge(0, 1);
  auto pg = perturb(g, 1);
  auto [t, lca] = build_spt(pg, 0);
  EXPECT_THROW(lca.lca(1, 2), UnreachableVertex);
}

TEST(Spt, TieIsDetected) {
  // Square with equal weights: 0-1-2 and 0-3-2 tie at vertex 2.
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 0);
  PerturbedGraph pg = perturb(g, 1);
  std::fill(pg.perturbation.begin(), pg.perturbation.end(), 5);
  EXPECT_THROW(build_spt(pg, 0), TieDetected);
  EXPECT_THROW(two_fault_dist_vector(pg, 0, FaultSet{}), TieDetected);
}

TEST(EdgeOnPath, FixtureExamples) {
  Graph c5 = dfo::testing::c5();
  auto pc = perturb(c5, 1);
  BaseTrees tc = build_all_spts(pc);
  EXPECT_TRUE(edge_on_path(pc, tc, 0, 2, edge(c5, 0, 1)));

  Graph p4 = dfo::testing::p4();
  auto pp = perturb(p4, 1);
  BaseTrees tp = build_all_spts(pp);
  EXPECT_TRUE(edge_on_path(pp, tp, 0, 3, edge(p4, 1, 2)));

  Graph k4 = dfo::testing::k4();
  auto pk = perturb(k4, 1);
  BaseTrees tk = build_all_spts(pk);
  EXPECT_FALSE(edge_on_path(pk, tk, 0, 1, edge(k4, 2, 3)));
}

TEST(EdgeOnPath, IdentityMatchesTreeTest) {
  Graph g = make_gnp(24, 0.2, 6, false);
  auto pg = perturb(g, 2);
  BaseTrees trees = build_all_spts(pg);
  for (Vertex s = 0; s < g.n(); ++s) {
    for (Vertex t = 0; t < g.n(); ++t) {
      for (EdgeId e = 0; e < g.m(); ++e) {
        ASSERT_EQ(edge_on_path(pg, trees, s, t, e), trees[s].edge_above(e, g.edge(e), t))
            << s << " " << t << " " << e;
      }
    }
  }
}

TEST(Intactness, FixtureExamples) {
  Graph p4 = dfo::testing::p4();
  auto pg = perturb(p4, 1);
  auto [t, lca] = build_spt(pg, 0);
  const FaultSet f12{edge(p4, 1, 2)};
  const FaultSet f23{edge(p4, 2, 3)};
  EXPECT_TRUE(prefix_intact(p4, t, 1, f12));
  EXPECT_FALSE(prefix_intact(p4, t, 3, f12));
  EXPECT_TRUE(prefix_intact(p4, t, 2, f23));
  // 1 and 2 are ancestors of 3, not below it.
  EXPECT_TRUE(subtree_intact(p4, t, 3, f12));
  EXPECT_TRUE(subtree_intact(p4, t, 2, FaultSet{}));
  EXPECT_FALSE(subtree_intact(p4, t, 1, f23));
  EXPECT_FALSE(is_clean(p4, t, 1, f23));
  for (Vertex x = 0; x < 4; ++x) EXPECT_TRUE(is_clean(p4, t, x, FaultSet{}));

  Graph c5 = dfo::testing::c5();
  auto pc = perturb(c5, 1);
  auto [tc, lc] = build_spt(pc, 0);
  EXPECT_TRUE(is_clean(c5, tc, 4, FaultSet{edge(c5, 0, 1)}));
}

TEST(Intactness, AgreesWithDirectScans) {
  Graph g = make_gnp(16, 0.25, 3);
  auto pg = perturb(g, 4);
  BaseTrees trees = build_all_spts(pg);
  for (const FaultSet& f : all_fault_sets(g, 2)) {
    for (Vertex s = 0; s < g.n(); s += 3) {
      for (Vertex x = 0; x < g.n(); ++x) {
        ASSERT_EQ(prefix_intact(g, trees[s], x, f), scan_prefix(g, trees[s], x, f));
        ASSERT_EQ(subtree_intact(g, trees[s], x, f), scan_subtree(g, trees[s], x, f));
      }
    }
  }
}
