#include <gtest/gtest.h>

#include "dfo/generators.hpp"
#include "dfo/registry.hpp"
#include "dfo/verifier.hpp"
#include "fixtures.hpp"

using namespace dfo;
using dfo::testing::edge;

namespace {

// Argmax over every edge pair of the graph, independent of the builder's
// path-restricted enumeration.
std::optional<MaxEntry> brute_entry(const Oracle& o, const MaxKey& key) {
  const Graph& g = o.graph().graph;
  std::optional<MaxEntry> best;
  for (EdgeId x = 0; x < g.m(); ++x) {
    for (EdgeId y = x + 1; y < g.m(); ++y) {
      if (!satisfies(o.index(), o.geo(), key, x, y)) continue;
      Weight w = two_fault_dist_vector(o.graph(), key.s, FaultSet{x, y}).dist_w[key.t];
      MaxEntry cand{x, y, w};
      if (!best || better_entry(cand, *best)) best = cand;
    }
  }
  return best;
}

bool same_pair(const MaxEntry& a, const MaxEntry& b) {
  return a.length_w == b.length_w && FaultSet{a.first, a.second} == FaultSet{b.first, b.second};
}

MaxKey c5_key() {
  MaxKey k;
  k.s = 0;
  k.t = 2;
  k.src = {Variant::kPrimaryIntact, 1};
  k.dst = {Variant::kPrimaryIntact, 1};
  return k;
}

}  // namespace

TEST(Registry, C5KeyDisconnects) {
  Graph c5 = dfo::testing::c5();
  auto o = dfo::testing::build(c5);
  auto got = o->registry().find(c5_key());
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(got->length_w, kInf);
  // Several pairs disconnect 0 from 2; ties go to the smallest id pair.
  EXPECT_EQ(got->first, edge(c5, 0, 1));
  EXPECT_EQ(got->second, edge(c5, 2, 3));
  auto brute = brute_entry(*o, c5_key());
  ASSERT_TRUE(brute.has_value());
  EXPECT_TRUE(same_pair(*got, *brute));
  // The pair named in the fixture description is also an argmax by length.
  EXPECT_EQ(two_fault_dist_vector(o->graph(), 0, FaultSet{edge(c5, 0, 1), edge(c5, 0, 4)}).dist_w[2], kInf);
}

TEST(Registry, K4EntriesHaveLengthTwo) {
  Graph k4 = dfo::testing::k4();
  auto o = dfo::testing::build(k4);
  const MaximiserRegistry& reg = o->registry();
  auto keys = reg.keys(0, 1);
  auto entries = reg.entries(0, 1);
  ASSERT_FALSE(keys.empty());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const MaxKey k = MaxKey::unpack(keys[i]);
    EXPECT_EQ(o->graph().hops(entries[i].length_w), 2) << k.describe();
    auto brute = brute_entry(*o, k);
    ASSERT_TRUE(brute.has_value());
    EXPECT_TRUE(same_pair(entries[i], *brute)) << k.describe();
  }
}

TEST(Registry, LookupCountsProbes) {
  Graph c5 = dfo::testing::c5();
  auto o = dfo::testing::build(c5);
  const MaximiserRegistry& reg = o->registry();
  reg.reset_probes();
  auto a = reg.lookup(c5_key());
  auto b = reg.lookup(c5_key());
  EXPECT_EQ(reg.probes(), 2u);
  EXPECT_EQ(a, b);
  reg.find(c5_key());
  EXPECT_EQ(reg.probes(), 2u);

  MaxKey unbuilt = c5_key();
  unbuilt.src.dist = 300;
  EXPECT_FALSE(reg.lookup(unbuilt).has_value());
  EXPECT_EQ(reg.probes(), 3u);
}

TEST(Registry, StoredEntriesMatchBruteForce) {
  for (std::uint64_t seed : {1, 2}) {
    Graph g = make_gnp(12, 0.3, seed);
    auto o = dfo::testing::build(g, seed);
    const MaximiserRegistry& reg = o->registry();
    std::size_t checked = 0;
    for (Vertex s = 0; s < g.n(); ++s) {
      for (Vertex t = 0; t < g.n(); ++t) {
        auto keys = reg.keys(s, t);
        auto entries = reg.entries(s, t);
        for (std::size_t i = 0; i < keys.size(); i += 3) {
          const MaxKey k = MaxKey::unpack(keys[i]);
          ASSERT_EQ(k.s, s);
          ASSERT_EQ(k.t, t);
          auto want = compute_entry(o->index(), o->geo(), k);
          ASSERT_TRUE(want.has_value()) << k.describe();
          ASSERT_EQ(entries[i], *want) << k.describe();
          if (i % 15 == 0) {
            auto brute = brute_entry(*o, k);
            ASSERT_TRUE(brute.has_value());
            ASSERT_TRUE(same_pair(entries[i], *brute)) << k.describe();
          }
          ++checked;
        }
      }
    }
    EXPECT_GT(checked, 100u);
  }
}

TEST(Registry, KeysSortedAndCleanParentsStored) {
  Graph g = make_gnp(14, 0.25, 4);
  auto o = dfo::testing::build(g, 4);
  const MaximiserRegistry& reg = o->registry();
  std::uint64_t cleans = 0;
  for (Vertex s = 0; s < g.n(); ++s) {
    for (Vertex t = 0; t < g.n(); ++t) {
      auto keys = reg.keys(s, t);
      auto parents = reg.parents(s, t);
      for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i > 0) {
          ASSERT_LT(keys[i - 1], keys[i]);
        }
        const MaxKey k = MaxKey::unpack(keys[i]);
        const bool clean = k.src.variant == Variant::kClean || k.dst.variant == Variant::kClean;
        if (!clean) {
          ASSERT_EQ(parents[i], 0u);
          continue;
        }
        ++cleans;
        ASSERT_NE(parents[i], 0u);
        // Parents point at stored entries for the same pair of endpoints.
        const MaxKey p = MaxKey::unpack(parents[i]);
        EXPECT_EQ(p.s, s);
        EXPECT_EQ(p.t, t);
        EXPECT_TRUE(reg.find(p).has_value()) << p.describe();
        EXPECT_EQ(reg.parent_of(k), parents[i]);
      }
    }
  }
  EXPECT_GT(cleans, 0u);
  const RegistryStats& st = reg.stats();
  EXPECT_EQ(st.group1 + st.one_clean + st.two_clean, reg.size());
  EXPECT_EQ(st.rule[0] + st.rule[1], reg.size());
  EXPECT_GE(st.issued_keys, reg.size());
}

TEST(Registry, ParallelBuildIsIdentical) {
  Graph g = make_gnp(20, 0.2, 6);
  auto o = dfo::testing::build(g, 6);
  RegistryConfig one;
  RegistryConfig two;
  two.jobs = 2;
  MaximiserRegistry a = build_registry(o->index(), o->landmarks(), o->geo(), one);
  MaximiserRegistry b = build_registry(o->index(), o->landmarks(), o->geo(), two);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(a.offsets(), b.offsets());
  for (Vertex s = 0; s < g.n(); ++s) {
    for (Vertex t = 0; t < g.n(); ++t) {
      auto ka = a.keys(s, t), kb = b.keys(s, t);
      auto ea = a.entries(s, t), eb = b.entries(s, t);
      ASSERT_TRUE(std::equal(ka.begin(), ka.end(), kb.begin(), kb.end()));
      ASSERT_TRUE(std::equal(ea.begin(), ea.end(), eb.begin(), eb.end()));
    }
  }
}

TEST(Registry, MemoryCap) {
  Graph g = make_gnp(20, 0.2, 6);
  OracleConfig cfg;
  cfg.mem_cap_bytes = 4096;
  EXPECT_THROW(Oracle::build(g, cfg), MemoryCapExceeded);
}

TEST(Registry, BetterEntryOrder) {
  MaxEntry a{1, 4, 10}, b{2, 3, 10}, c{0, 5, 9}, inf{7, 8, kInf};
  EXPECT_TRUE(better_entry(a, b));
  EXPECT_FALSE(better_entry(b, a));
  EXPECT_TRUE(better_entry(a, c));
  EXPECT_TRUE(better_entry(inf, a));
  EXPECT_TRUE(better_entry(MaxEntry{4, 1, 10}, b));
}

TEST(Registry, DominanceAndHitOrExact) {
  for (std::uint64_t seed : {1, 2, 3}) {
    Graph g = make_gnp(14, 0.25, seed);
    auto o = dfo::testing::build(g, seed);
    VerificationReport r = verify_registry(*o, "gnp14");
    EXPECT_GT(r.dominance.checks, 0u);
    EXPECT_EQ(r.dominance.violations, 0u);
    EXPECT_GT(r.hit_or_exact.checks, 0u);
    EXPECT_EQ(r.hit_or_exact.violations, 0u);
  }
}
