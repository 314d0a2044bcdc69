#include "dfo/registry.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

namespace dfo {

MaximiserRegistry::MaximiserRegistry(const MaximiserRegistry& o)
    : n_(o.n_), offsets_(o.offsets_), keys_(o.keys_), entries_(o.entries_), parents_(o.parents_), stats_(o.stats_) {}

MaximiserRegistry& MaximiserRegistry::operator=(const MaximiserRegistry& o) {
  if (this != &o) {
    n_ = o.n_;
    offsets_ = o.offsets_;
    keys_ = o.keys_;
    entries_ = o.entries_;
    parents_ = o.parents_;
    stats_ = o.stats_;
    probes_.store(0);
  }
  return *this;
}

std::ptrdiff_t MaximiserRegistry::locate(const MaxKey& key) const {
  if (key.s < 0 || key.t < 0 || key.s >= n_ || key.t >= n_) return -1;
  const std::size_t block = static_cast<std::size_t>(key.s) * n_ + key.t;
  const auto lo = keys_.begin() + static_cast<std::ptrdiff_t>(offsets_[block]);
  const auto hi = keys_.begin() + static_cast<std::ptrdiff_t>(offsets_[block + 1]);
  const std::uint64_t code = key.pack();
  auto it = std::lower_bound(lo, hi, code);
  if (it == hi || *it != code) return -1;
  return it - keys_.begin();
}

std::optional<MaxEntry> MaximiserRegistry::lookup(const MaxKey& key) const {
  probes_.fetch_add(1, std::memory_order_relaxed);
  return find(key);
}

std::optional<MaxEntry> MaximiserRegistry::find(const MaxKey& key) const {
  std::ptrdiff_t i = locate(key);
  if (i < 0) return std::nullopt;
  return entries_[static_cast<std::size_t>(i)];
}

std::uint64_t MaximiserRegistry::parent_of(const MaxKey& key) const {
  std::ptrdiff_t i = locate(key);
  return i < 0 ? 0 : parents_[static_cast<std::size_t>(i)];
}

std::span<const std::uint64_t> MaximiserRegistry::keys(Vertex s, Vertex t) const {
  const std::size_t b = static_cast<std::size_t>(s) * n_ + t;
  return {keys_.data() + offsets_[b], keys_.data() + offsets_[b + 1]};
}

std::span<const MaxEntry> MaximiserRegistry::entries(Vertex s, Vertex t) const {
  const std::size_t b = static_cast<std::size_t>(s) * n_ + t;
  return {entries_.data() + offsets_[b], entries_.data() + offsets_[b + 1]};
}

std::span<const std::uint64_t> MaximiserRegistry::parents(Vertex s, Vertex t) const {
  const std::size_t b = static_cast<std::size_t>(s) * n_ + t;
  return {parents_.data() + offsets_[b], parents_.data() + offsets_[b + 1]};
}

std::size_t MaximiserRegistry::approx_bytes() const {
  return offsets_.size() * sizeof(std::uint64_t) + keys_.size() * sizeof(std::uint64_t) +
         entries_.size() * sizeof(MaxEntry) + parents_.size() * sizeof(std::uint64_t);
}

MaximiserRegistry MaximiserRegistry::assemble(Vertex n, std::vector<std::uint64_t> offsets,
                                              std::vector<std::uint64_t> keys, std::vector<MaxEntry> entries,
                                              std::vector<std::uint64_t> parents, RegistryStats stats) {
  if (offsets.size() != static_cast<std::size_t>(n) * n + 1 || keys.size() != entries.size() ||
      keys.size() != parents.size() || offsets.back() != keys.size()) {
    throw std::invalid_argument("inconsistent registry arrays");
  }
  MaximiserRegistry r;
  r.n_ = n;
  r.offsets_ = std::move(offsets);
  r.keys_ = std::move(keys);
  r.entries_ = std::move(entries);
  r.parents_ = std::move(parents);
  r.stats_ = stats;
  return r;
}

bool better_entry(const MaxEntry& a, const MaxEntry& b) {
  if (a.length_w != b.length_w) return a.length_w > b.length_w;
  auto lo_a = std::min(a.first, a.second), hi_a = std::max(a.first, a.second);
  auto lo_b = std::min(b.first, b.second), hi_b = std::max(b.first, b.second);
  return std::pair(lo_a, hi_a) < std::pair(lo_b, hi_b);
}

bool exact_budget_ok(const LandmarkSets& lm, Vertex s, Vertex t, Phase src, Phase dst, const PairProfile& p) {
  Hops bs = exact_budget(src, p.src);
  Hops bt = exact_budget(dst, p.dst);
  return (bs == 0 || bs <= lm.max_close_dist(s)) && (bt == 0 || bt <= lm.max_close_dist(t));
}

namespace {

struct Ladder {
  SideCase side_case;
  Phase phase;
};

constexpr Ladder kSecondaryRuleLadder[] = {
    {SideCase::kPrimary, Phase::kFresh},       {SideCase::kPrimary, Phase::kDClose},
    {SideCase::kSecondary, Phase::kFresh},     {SideCase::kSecondary, Phase::kCloseE1},
    {SideCase::kSecondary, Phase::kTrapezoid}, {SideCase::kSecondary, Phase::kDCloseSec},
};

constexpr Ladder kPrimaryRuleLadder[] = {
    {SideCase::kPrimary, Phase::kFresh},
    {SideCase::kPrimary, Phase::kDClose},
};

std::span<const Ladder> ladder_for(PairRule rule) {
  if (rule == PairRule::kPrimarySecondary) return kSecondaryRuleLadder;
  return kPrimaryRuleLadder;
}

// BOTH_INTACT with a budget that is not a power of two can only come from the
// close-vertex step, whose outputs never serve as clean vertices.
bool close_step_side(const SideCond& c) {
  return c.variant == Variant::kBothIntact && c.dist > 1 && (c.dist & (c.dist - 1)) != 0;
}

struct Incidence {
  Vertex t;
  PairRule rule;
  OrientedFaults o;
  EdgeId lo, hi;
  Weight w;
};

struct Slot {
  std::uint64_t code;
  MaxKey key;
  std::uint64_t parent;
  MaxEntry best;
  bool has;
};

struct SourceResult {
  std::vector<std::vector<Slot>> per_t;
  std::uint64_t issued = 0;
  std::uint64_t runs = 0;
};

std::vector<Vertex> entry_endpoints(const Graph& g, const MaxEntry& e) {
  std::vector<Vertex> v;
  for (EdgeId id : {e.first, e.second}) {
    if (id == kNoEdge) continue;
    v.push_back(g.edge(id).u);
    v.push_back(g.edge(id).v);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void fold(const PathIndex& idx, const GeoScale& geo, const std::vector<Incidence>& inc,
          std::vector<std::vector<Slot>>& slots_by_t) {
  for (const Incidence& x : inc) {
    for (Slot& sl : slots_by_t[x.t]) {
      if (sl.key.rule != x.rule) continue;
      if (!satisfies(idx, geo, sl.key, x.o)) continue;
      MaxEntry cand{x.o.e1, x.o.e2, x.w};
      if (!sl.has || better_entry(cand, sl.best)) {
        sl.best = cand;
        sl.has = true;
      }
    }
  }
}

// Inserts (code, parent) pairs into per-t slot lists, keeping the smallest
// parent for duplicates.
void settle(std::vector<Slot>& slots) {
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    return a.code != b.code ? a.code < b.code : a.parent < b.parent;
  });
  slots.erase(std::unique(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) { return a.code == b.code; }),
              slots.end());
}

Slot make_slot(const MaxKey& k, std::uint64_t parent) { return Slot{k.pack(), k, parent, MaxEntry{}, false}; }

// Clean-side keys derived from finished entries. `want_clean` is the number of
// clean sides the parents carry.
std::vector<std::vector<Slot>> derive_clean(const Graph& g, Vertex s, const std::vector<std::vector<Slot>>& from,
                                            int want_clean) {
  std::vector<std::vector<Slot>> out(from.size());
  for (std::size_t t = 0; t < from.size(); ++t) {
    for (const Slot& p : from[t]) {
      if (!p.has) continue;
      const bool src_clean = p.key.src.variant == Variant::kClean;
      const bool dst_clean = p.key.dst.variant == Variant::kClean;
      if (static_cast<int>(src_clean) + static_cast<int>(dst_clean) != want_clean) continue;
      const std::vector<Vertex> ends = entry_endpoints(g, p.best);
      if (!src_clean && !close_step_side(p.key.src)) {
        for (Vertex x : ends) {
          if (x == s) continue;
          MaxKey k = p.key;
          k.src = SideCond{Variant::kClean, 1, 0, x};
          out[t].push_back(make_slot(k, p.code));
        }
      }
      if (!dst_clean && !close_step_side(p.key.dst)) {
        for (Vertex x : ends) {
          if (x == static_cast<Vertex>(t)) continue;
          MaxKey k = p.key;
          k.dst = SideCond{Variant::kClean, 1, 0, x};
          out[t].push_back(make_slot(k, p.code));
        }
      }
    }
    settle(out[t]);
  }
  return out;
}

SourceResult build_source(const PathIndex& idx, const LandmarkSets& lm, const GeoScale& geo, Vertex s) {
  const Graph& g = idx.graph();
  const Vertex n = idx.n();
  const ShortestPathTree& ts = idx.spt(s);
  SourceResult res;
  std::vector<Incidence> inc;

  auto add = [&](Vertex t, PairRule rule, EdgeId first, EdgeId second) {
    Incidence x;
    x.t = t;
    x.rule = rule;
    x.o = orient_pair(idx, s, t, first, second, rule);
    x.lo = std::min(first, second);
    x.hi = std::max(first, second);
    x.w = kInf;
    inc.push_back(x);
  };

  for (Vertex b : ts.preorder) {
    if (b == s) continue;
    const EdgeId e = ts.parent_edge[b];
    const ShortestPathTree& sec = idx.fault_tree(s, e) != nullptr ? *idx.fault_tree(s, e) : ts;
    // second edge on the replacement path, off the primary one
    for (Vertex d : sec.preorder) {
      if (d == s) continue;
      const EdgeId e2 = sec.parent_edge[d];
      for (std::int32_t i = sec.tin[d]; i <= sec.tout[d]; ++i) {
        Vertex t = sec.preorder[i];
        if (!ts.is_ancestor(b, t) || ts.edge_above(e2, g.edge(e2), t)) continue;
        add(t, PairRule::kPrimarySecondary, e, e2);
      }
    }
    // both edges on the primary path
    for (std::int32_t j = ts.tin[b] + 1; j <= ts.tout[b]; ++j) {
      Vertex d = ts.preorder[j];
      const EdgeId e2 = ts.parent_edge[d];
      for (std::int32_t i = ts.tin[d]; i <= ts.tout[d]; ++i) add(ts.preorder[i], PairRule::kBothPrimary, e, e2);
    }
  }

  std::sort(inc.begin(), inc.end(), [](const Incidence& a, const Incidence& b) {
    return std::tie(a.lo, a.hi, a.t, a.rule) < std::tie(b.lo, b.hi, b.t, b.rule);
  });
  DistanceWorkspace ws;
  for (std::size_t i = 0; i < inc.size();) {
    std::size_t j = i;
    ws.run(idx.pg(), s, inc[i].lo, inc[i].hi);
    ++res.runs;
    while (j < inc.size() && inc[j].lo == inc[i].lo && inc[j].hi == inc[i].hi) {
      inc[j].w = ws.dist()[inc[j].t];
      ++j;
    }
    i = j;
  }

  // Issuable keys: every ladder position the query can reach for some eligible
  // pair's profile.
  std::vector<std::vector<Slot>> g1(n);
  for (const Incidence& x : inc) {
    const PairProfile p = profile_of(idx, s, x.t, x.o);
    for (const Ladder& ls : ladder_for(x.rule)) {
      for (const Ladder& lt : ladder_for(x.rule)) {
        if (!exact_budget_ok(lm, s, x.t, ls.phase, lt.phase, p)) continue;
        MaxKey k;
        k.s = s;
        k.t = x.t;
        k.rule = x.rule;
        k.src = side_condition(ls.phase, ls.side_case, p.src, geo);
        k.dst = side_condition(lt.phase, lt.side_case, p.dst, geo);
        g1[x.t].push_back(make_slot(k, 0));
      }
    }
  }
  for (auto& v : g1) settle(v);
  fold(idx, geo, inc, g1);

  auto one = derive_clean(g, s, g1, 0);
  fold(idx, geo, inc, one);
  auto two = derive_clean(g, s, one, 1);
  fold(idx, geo, inc, two);

  res.per_t.resize(n);
  for (Vertex t = 0; t < n; ++t) {
    auto& out = res.per_t[t];
    for (auto* part : {&g1[t], &one[t], &two[t]}) {
      res.issued += part->size();
      for (Slot& sl : *part)
        if (sl.has) out.push_back(sl);
    }
    std::sort(out.begin(), out.end(), [](const Slot& a, const Slot& b) { return a.code < b.code; });
  }
  return res;
}

}  // namespace

MaximiserRegistry build_registry(const PathIndex& idx, const LandmarkSets& lm, const GeoScale& geo,
                                 const RegistryConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const Vertex n = idx.n();
  if (n > kMaxKeyVertices) {
    throw std::invalid_argument(fmt::format("registry keys hold at most {} vertices, got {}", kMaxKeyVertices, n));
  }
  std::vector<SourceResult> per_source(n);
  std::atomic<Vertex> next{0};
  std::atomic<std::size_t> records{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mu;
  constexpr std::size_t kRecordBytes = sizeof(std::uint64_t) * 2 + sizeof(MaxEntry);

  auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      Vertex s = next.fetch_add(1);
      if (s >= n) return;
      try {
        per_source[s] = build_source(idx, lm, geo, s);
        std::size_t k = 0;
        for (const auto& v : per_source[s].per_t) k += v.size();
        std::size_t total = records.fetch_add(k) + k;
        std::size_t bytes = total * kRecordBytes + static_cast<std::size_t>(n) * n * sizeof(std::uint64_t);
        if (bytes > config.mem_cap_bytes) {
          throw MemoryCapExceeded(fmt::format(
              "registry needs at least {:.1f} MiB after source {} of {} ({} records); cap is {:.1f} MiB",
              bytes / 1048576.0, s + 1, n, total, config.mem_cap_bytes / 1048576.0));
        }
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        stop.store(true);
        return;
      }
    }
  };
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  RegistryStats stats;
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(n) * n + 1, 0);
  std::vector<std::uint64_t> keys;
  std::vector<MaxEntry> entries;
  std::vector<std::uint64_t> parents;
  keys.reserve(records.load());
  entries.reserve(records.load());
  parents.reserve(records.load());
  for (Vertex s = 0; s < n; ++s) {
    SourceResult& r = per_source[s];
    stats.issued_keys += r.issued;
    stats.pair_runs += r.runs;
    for (Vertex t = 0; t < n; ++t) {
      offsets[static_cast<std::size_t>(s) * n + t] = keys.size();
      for (const Slot& sl : r.per_t[t]) {
        keys.push_back(sl.code);
        entries.push_back(sl.best);
        parents.push_back(sl.parent);
        ++stats.src_variant[static_cast<int>(sl.key.src.variant)];
        ++stats.dst_variant[static_cast<int>(sl.key.dst.variant)];
        ++stats.rule[static_cast<int>(sl.key.rule)];
        int clean = (sl.key.src.variant == Variant::kClean) + (sl.key.dst.variant == Variant::kClean);
        if (clean == 0) ++stats.group1;
        if (clean == 1) ++stats.one_clean;
        if (clean == 2) ++stats.two_clean;
      }
    }
    r = SourceResult{};
  }
  offsets.back() = keys.size();
  stats.build_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return MaximiserRegistry::assemble(n, std::move(offsets), std::move(keys), std::move(entries), std::move(parents),
                                     stats);
}

std::optional<MaxEntry> compute_entry(const PathIndex& idx, const GeoScale& geo, const MaxKey& key) {
  const Vertex s = key.s, t = key.t;
  if (s == t || idx.dist_w(s, t) == kInf) return std::nullopt;
  const Graph& g = idx.graph();
  const ShortestPathTree& ts = idx.spt(s);
  std::vector<EdgeId> primary;
  for (Vertex v = t; v != s; v = ts.parent[v]) primary.push_back(ts.parent_edge[v]);

  std::optional<MaxEntry> best;
  DistanceWorkspace ws;
  auto consider = [&](EdgeId first, EdgeId second) {
    OrientedFaults o = orient_pair(idx, s, t, first, second, key.rule);
    if (!satisfies(idx, geo, key, o)) return;
    ws.run(idx.pg(), s, first, second);
    MaxEntry cand{o.e1, o.e2, ws.dist()[t]};
    if (!best || better_entry(cand, *best)) best = cand;
  };

  if (key.rule == PairRule::kBothPrimary) {
    for (std::size_t i = 0; i < primary.size(); ++i)
      for (std::size_t j = i + 1; j < primary.size(); ++j) consider(primary[i], primary[j]);
    return best;
  }
  for (EdgeId e1 : primary) {
    const ShortestPathTree* sec = idx.fault_tree(s, e1);
    if (sec == nullptr || !sec->reachable(t)) continue;
    for (Vertex v = t; v != s; v = sec->parent[v]) {
      EdgeId e2 = sec->parent_edge[v];
      if (ts.edge_above(e2, g.edge(e2), t)) continue;
      consider(e1, e2);
    }
  }
  return best;
}

}  // namespace dfo
