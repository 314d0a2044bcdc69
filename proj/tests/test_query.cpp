#include <gtest/gtest.h>

#include "dfo/generators.hpp"
#include "dfo/verifier.hpp"
#include "fixtures.hpp"

using namespace dfo;
using dfo::testing::edge;

TEST(Query, FixtureExamples) {
  Graph c5 = dfo::testing::c5();
  auto oc = dfo::testing::build(c5);
  EXPECT_EQ(oc->query(0, 2, FaultSet{edge(c5, 0, 1), edge(c5, 3, 4)}).distance, kInfHops);
  EXPECT_EQ(oc->query(0, 2, FaultSet{edge(c5, 0, 1)}).distance, 3);

  Graph k4 = dfo::testing::k4();
  auto ok = dfo::testing::build(k4);
  EXPECT_EQ(ok->query(0, 1, FaultSet{edge(k4, 0, 1), edge(k4, 0, 2)}).distance, 2);
  EXPECT_EQ(ok->query(0, 1, FaultSet{edge(k4, 2, 3)}).distance, 1);

  Graph p4 = dfo::testing::p4();
  auto op = dfo::testing::build(p4);
  EXPECT_EQ(op->query(0, 3, FaultSet{edge(p4, 1, 2)}).distance, kInfHops);
  EXPECT_EQ(op->query(2, 2, FaultSet{edge(p4, 1, 2)}).distance, 0);
}

TEST(Query, NoFaultsIsTreeDistanceWithoutProbes) {
  Graph g = make_gnp(30, 0.15, 2);
  auto o = dfo::testing::build(g, 2);
  for (Vertex s = 0; s < g.n(); ++s) {
    for (Vertex t = 0; t < g.n(); ++t) {
      QueryOutcome r = o->query(s, t, FaultSet{});
      ASSERT_EQ(r.distance, o->index().dist_h(s, t));
      ASSERT_EQ(r.probes, 0u);
      ASSERT_TRUE(r.certified);
    }
  }
}

TEST(Query, SingleFaultMatchesIndex) {
  Graph g = make_gnp(20, 0.2, 3);
  auto o = dfo::testing::build(g, 3);
  for (EdgeId e = 0; e < g.m(); ++e) {
    for (Vertex s = 0; s < g.n(); ++s) {
      for (Vertex t = 0; t < g.n(); ++t) ASSERT_EQ(o->query(s, t, FaultSet{e}).distance, o->index().dist_1f(s, t, e));
    }
  }
}

TEST(Query, ClassifyExamples) {
  Graph k4 = dfo::testing::k4();
  auto ok = dfo::testing::build(k4);
  EXPECT_EQ(ok->index().classify(0, 1, FaultSet{edge(k4, 2, 3)}).tag, CaseTag::kNoFaultOnPrimary);

  Graph c5 = dfo::testing::c5();
  auto oc = dfo::testing::build(c5);
  EXPECT_EQ(oc->index().classify(0, 2, FaultSet{edge(c5, 0, 1), edge(c5, 2, 3)}).tag,
            CaseTag::kPrimaryPlusSecondary);
  // (0,1) is on st; (2,3) is off every 2-hop detour from 0 to 1.
  EXPECT_EQ(ok->index().classify(0, 1, FaultSet{edge(k4, 0, 1), edge(k4, 2, 3)}).tag, CaseTag::kSingleEffective);

  Graph p4 = dfo::testing::p4();
  auto op = dfo::testing::build(p4);
  OrientedFaults o = op->index().classify(0, 3, FaultSet{edge(p4, 0, 1), edge(p4, 2, 3)});
  EXPECT_EQ(o.tag, CaseTag::kBothPrimary);
  EXPECT_EQ(o.e1, edge(p4, 0, 1));
}

TEST(Query, SymmetricAndMonotone) {
  Graph g = make_gnp(16, 0.25, 5);
  auto o = dfo::testing::build(g, 5);
  for (const FaultSet& f : all_fault_sets(g, 2)) {
    if (f.size() < 2) continue;
    const EdgeId a = *f.begin();
    const EdgeId b = *std::next(f.begin());
    for (Vertex s = 0; s < g.n(); ++s) {
      for (Vertex t = s + 1; t < g.n(); ++t) {
        const Hops st = o->query(s, t, f).distance;
        ASSERT_EQ(st, o->query(t, s, f).distance) << s << " " << t;
        ASSERT_GE(st, o->query(s, t, FaultSet{a}).distance);
        ASSERT_GE(st, o->query(s, t, FaultSet{b}).distance);
      }
    }
  }
}

TEST(Query, SessionsAgreeWithOneOffQueries) {
  Graph g = make_gnp(18, 0.2, 7);
  auto o = dfo::testing::build(g, 7);
  for (const FaultSet& f : all_fault_sets(g, 2)) {
    if (f.size() < 2 || (*f.begin() + *std::next(f.begin())) % 5 != 0) continue;
    QuerySession session(o->engine(), f);
    for (Vertex s = 0; s < g.n(); ++s) {
      for (Vertex t = 0; t < g.n(); ++t) {
        ASSERT_EQ(session.query(s, t).distance, brute_dist(g, s, t, f));
      }
    }
  }
}

TEST(Query, StrictModeRaisesWhereLenientModeFallsBack) {
  Graph g = make_gnp(24, 0.15, 2);
  auto o = dfo::testing::build(g, 2);
  LandmarkSets sparse = o->landmarks();
  for (int i = 0; i < sparse.levels(); ++i) sparse.set_level(i, {});
  QueryOptions strict;
  strict.strict = true;
  QueryEngine lenient_engine(o->index(), sparse, o->geo(), o->registry());
  QueryEngine strict_engine(o->index(), sparse, o->geo(), o->registry(), strict);

  int raised = 0, uncertified = 0;
  for (const FaultSet& f : all_fault_sets(g, 2)) {
    if (f.size() < 2) continue;
    for (Vertex s = 0; s < g.n(); s += 3) {
      for (Vertex t = 1; t < g.n(); t += 4) {
        QueryOutcome r = lenient_engine.query(s, t, f);
        ASSERT_EQ(r.distance, brute_dist(g, s, t, f));
        if (r.certified) continue;
        ++uncertified;
        try {
          strict_engine.query(s, t, f);
        } catch (const LandmarkMiss&) {
          ++raised;
        } catch (const MissingKey&) {
          ++raised;
        }
      }
    }
    if (raised > 20) break;
  }
  EXPECT_GT(uncertified, 0);
  EXPECT_GT(raised, 0);
}

TEST(Query, TraceRecordsSteps) {
  Graph c5 = dfo::testing::c5();
  auto o = dfo::testing::build(c5);
  QueryOptions opt;
  opt.trace = true;
  QueryEngine eng(o->index(), o->landmarks(), o->geo(), o->registry(), opt);
  QueryOutcome r = eng.query(0, 2, FaultSet{edge(c5, 0, 1), edge(c5, 3, 4)});
  EXPECT_EQ(r.distance, kInfHops);
  EXPECT_FALSE(r.trace.empty());
  EXPECT_GT(r.probes, 0u);
}
