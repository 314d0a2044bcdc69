#include <gtest/gtest.h>

#include <sstream>

#include "dfo/generators.hpp"
#include "dfo/perturbed.hpp"
#include "fixtures.hpp"

using namespace dfo;
using dfo::testing::parse;

TEST(LoadGraph, PathCycleComplete) {
  Graph p = dfo::testing::p4();
  EXPECT_EQ(p.n(), 4);
  EXPECT_EQ(p.m(), 3);
  EXPECT_EQ(p.edge(1).u, 1);
  EXPECT_EQ(p.edge(1).v, 2);

  Graph c = dfo::testing::c5();
  EXPECT_EQ(c.m(), 5);
  for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(c.adj(v).size(), 2u);

  Graph k = dfo::testing::k4();
  EXPECT_EQ(k.m(), 6);
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(k.adj(v).size(), 3u);
}

TEST(LoadGraph, CommentsAndBlankLines) {
  Graph g = parse("# header comment\n3 2  # n m\n\n0 1\n# between\n1 2 # trailing\n");
  EXPECT_EQ(g.n(), 3);
  EXPECT_EQ(g.m(), 2);
  EXPECT_NE(g.find_edge(2, 1), kNoEdge);
}

TEST(LoadGraph, ErrorsCarryLineNumbers) {
  try {
    parse("3 2\n0 1\n1 x\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse("3 2\n0 1\n1 0\n"), DuplicateEdgeError);
  EXPECT_THROW(parse("3 1\n0 3\n"), VertexRangeError);
  EXPECT_THROW(parse("3 1\n1 1\n"), ParseError);
  EXPECT_THROW(parse("3 2\n0 1\n"), ParseError);
  EXPECT_THROW(parse("3 1\n0 1\n1 2\n"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(LoadGraph, WriteRoundTrip) {
  Graph g = make_gnp(20, 0.3, 5);
  std::ostringstream out;
  write_graph(out, g);
  Graph h = parse(out.str());
  ASSERT_EQ(h.n(), g.n());
  ASSERT_EQ(h.m(), g.m());
  for (EdgeId e = 0; e < g.m(); ++e) {
    EXPECT_EQ(h.edge(e).u, g.edge(e).u);
    EXPECT_EQ(h.edge(e).v, g.edge(e).v);
  }
}

TEST(Generators, Shapes) {
  EXPECT_EQ(make_cycle(5).m(), 5);
  EXPECT_EQ(make_complete(4).m(), 6);
  EXPECT_EQ(make_path(4).m(), 3);
  Graph grid = make_grid(6, 6);
  EXPECT_EQ(grid.n(), 36);
  EXPECT_EQ(grid.m(), 60);
  Graph ch = make_cycle_with_chords(20, 3, 5, 1);
  EXPECT_EQ(ch.m(), 23);
}

TEST(Generators, GnpIsDeterministicAndConnected) {
  Graph a = make_gnp(64, 0.15, 7);
  Graph b = make_gnp(64, 0.15, 7);
  ASSERT_EQ(a.m(), b.m());
  for (EdgeId e = 0; e < a.m(); ++e) {
    EXPECT_EQ(a.edge(e).u, b.edge(e).u);
    EXPECT_EQ(a.edge(e).v, b.edge(e).v);
  }
  Graph lc = largest_component(a);
  EXPECT_EQ(lc.n(), a.n());
}

TEST(Perturb, CompactSchemeBounds) {
  // n = 4: B = 64, r in [1, 16).
  PerturbedGraph pg = perturb(dfo::testing::p4(), 3, PerturbationScheme::kCompact);
  EXPECT_EQ(pg.base, 64);
  for (EdgeId e = 0; e < pg.graph.m(); ++e) {
    EXPECT_GE(pg.weight(e), 65);
    EXPECT_LE(pg.weight(e), 79);
  }
}

TEST(Perturb, WideSchemeIsHopDominant) {
  Graph g = make_gnp(40, 0.2, 2);
  PerturbedGraph pg = perturb(g, 11);
  const Weight n = g.n();
  EXPECT_EQ(pg.base, n << 40);
  for (Weight r : pg.perturbation) {
    EXPECT_GE(r, 1);
    EXPECT_LT(r, Weight{1} << 40);
  }
  // Any simple path has < n edges, so its perturbation total stays below B.
  EXPECT_LT((n - 1) * ((Weight{1} << 40) - 1), pg.base);
}

TEST(Perturb, ReproducibleFromSeed) {
  Graph g = make_gnp(30, 0.2, 4);
  EXPECT_EQ(perturb(g, 9).perturbation, perturb(g, 9).perturbation);
  EXPECT_NE(perturb(g, 9).perturbation, perturb(g, 10).perturbation);
}

TEST(FaultSetType, OrderInsensitiveAndDeduplicated) {
  EXPECT_EQ((FaultSet{3, 1}), (FaultSet{1, 3}));
  EXPECT_EQ((FaultSet{2, 2}).size(), 1);
  FaultSet f{4};
  EXPECT_TRUE(f.contains(4));
  EXPECT_FALSE(f.contains(5));
  EXPECT_TRUE(FaultSet{}.empty());
}
