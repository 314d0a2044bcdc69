#include "dfo/query.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <tuple>

#include <fmt/format.h>

namespace dfo {

const char* to_string(Fallback f) {
  switch (f) {
    case Fallback::kLandmarkMiss: return "landmark_miss";
    case Fallback::kOffSchedule: return "off_schedule";
    case Fallback::kRerouteCap: return "reroute_cap";
    case Fallback::kStateCap: return "state_cap";
    case Fallback::kHitSetCap: return "hitset_cap";
  }
  return "?";
}

QueryOutcome QueryEngine::query(Vertex s, Vertex t, const FaultSet& f, int budget, QueryObserver* obs) const {
  QuerySession session(*this, f, obs);
  return session.query(s, t, budget);
}

struct QuerySession::SideState {
  Phase phase = Phase::kFresh;
  Phase prior = Phase::kFresh;
  Vertex clean = kNoVertex;
  bool registered = false;
};

struct QuerySession::ChainState {
  Vertex s = kNoVertex;
  Vertex t = kNoVertex;
  Weight off_s = 0;
  Weight off_t = 0;
  SideState src;
  SideState dst;
  SideCase src_case = SideCase::kPrimary;
  SideCase dst_case = SideCase::kPrimary;
  PairRule rule = PairRule::kPrimarySecondary;
  EdgeId e1 = kNoEdge;
  int reroutes = 0;

  std::uint64_t code() const {
    auto side = [](const SideState& x) {
      return static_cast<std::uint64_t>(x.phase) | (static_cast<std::uint64_t>(x.prior) << 3) |
             (static_cast<std::uint64_t>(x.clean + 1) << 6) | (static_cast<std::uint64_t>(x.registered) << 16);
    };
    return static_cast<std::uint64_t>(s) | (static_cast<std::uint64_t>(t) << 9) | (side(src) << 18) |
           (side(dst) << 35) | (static_cast<std::uint64_t>(src_case) << 52) |
           (static_cast<std::uint64_t>(dst_case) << 53) | (static_cast<std::uint64_t>(rule) << 54);
  }
};

struct QuerySession::HitSet {
  Vertex s = kNoVertex;
  Vertex t = kNoVertex;
  Weight L = kInf;
  std::vector<Vertex> H;
  std::set<std::tuple<std::uint64_t, Weight, Weight>> seen;
  int states = 0;
};

QuerySession::QuerySession(const QueryEngine& engine, const FaultSet& faults, QueryObserver* obs)
    : eng_(engine), idx_(engine.index()), faults_(faults), fe_(engine.index().graph(), faults), obs_(obs) {
  for (EdgeId e : faults_) {
    if (e < 0 || e >= idx_.graph().m()) throw std::out_of_range(fmt::format("edge id {} out of range", e));
  }
}

QueryOutcome QuerySession::query(Vertex s, Vertex t, int budget) {
  const Vertex n = idx_.n();
  if (s < 0 || t < 0 || s >= n || t >= n) throw std::out_of_range(fmt::format("vertex pair ({},{}) out of range", s, t));
  if (budget < 0 || budget > 2) throw std::invalid_argument("recursion budget must be 0, 1 or 2");
  QueryOutcome out;
  current_ = &out;
  bool tainted = false;
  out.weight = solve(s, t, budget, tainted);
  out.distance = idx_.pg().hops(out.weight);
  out.certified = !tainted;
  current_ = nullptr;
  return out;
}

void QuerySession::offer(Vertex s, Vertex t, Weight w) {
  if (obs_ != nullptr && w != kInf) obs_->on_candidate(s, t, w);
}

void QuerySession::note(Fallback kind, bool& tainted) {
  tainted = true;
  if (current_ != nullptr) ++current_->fallbacks[static_cast<int>(kind)];
}

void QuerySession::log(std::string line) {
  if (current_ != nullptr && eng_.options().trace) current_->trace.push_back(std::move(line));
}

Weight QuerySession::solve(Vertex s, Vertex t, int f, bool& tainted) {
  if (s == t) return 0;
  if (idx_.dist_w(s, t) == kInf) return kInf;
  const std::uint64_t mk = static_cast<std::uint64_t>(s) | (static_cast<std::uint64_t>(t) << 20) |
                           (static_cast<std::uint64_t>(f) << 40);
  if (auto it = memo_.find(mk); it != memo_.end()) {
    tainted = tainted || it->second.tainted;
    return it->second.w;
  }
  bool local = false;
  Weight ans = kInf;
  const OrientedFaults o = idx_.classify(s, t, faults_);
  if (o.tag == CaseTag::kNoFaultOnPrimary) {
    ans = idx_.dist_w(s, t);
  } else if (o.tag == CaseTag::kSingleEffective) {
    ans = idx_.dist_1f_w(s, t, o.e1);
  } else if (f > 0) {
    HitSet hs;
    hs.s = s;
    hs.t = t;
    hitset(s, t, o, hs, local);
    ans = hs.L;
    log(fmt::format("hitset {}->{} f={} L={} |H|={}", s, t, f, hs.L == kInf ? -1 : idx_.pg().hops(hs.L),
                    hs.H.size()));
    for (Vertex x : hs.H) {
      Weight w = add_w(solve(s, x, f - 1, local), solve(x, t, f - 1, local));
      offer(s, t, w);
      ans = std::min(ans, w);
    }
  }
  if (ans != kInf) offer(s, t, ans);
  memo_[mk] = Memo{ans, local};
  tainted = tainted || local;
  return ans;
}

void QuerySession::hitset(Vertex s, Vertex t, const OrientedFaults& o, HitSet& out, bool& tainted) {
  ChainState base;
  base.s = s;
  base.t = t;
  base.e1 = o.e1;
  std::deque<ChainState> starts;
  if (o.tag == CaseTag::kBothPrimary) {
    base.rule = PairRule::kBothPrimary;
    starts.push_back(base);
  } else {
    base.rule = PairRule::kPrimarySecondary;
    for (SideCase cs : {SideCase::kPrimary, SideCase::kSecondary}) {
      for (SideCase ct : {SideCase::kPrimary, SideCase::kSecondary}) {
        ChainState st = base;
        st.src_case = cs;
        st.dst_case = ct;
        starts.push_back(st);
      }
    }
  }
  // One breadth-first worklist over all flows, so a flow that reroutes
  // repeatedly cannot starve the others of the state budget.
  run_flows(std::move(starts), out, tainted);
}

namespace {

std::vector<Vertex> endpoints_of(const Graph& g, const MaxEntry& e) {
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

bool close_step_side(const SideCond& c) {
  return c.variant == Variant::kBothIntact && c.dist > 1 && (c.dist & (c.dist - 1)) != 0;
}

// Vertex `hops` steps up from x, stopping at the source.
Vertex climb(const ShortestPathTree& tr, Vertex x, Hops hops) {
  Vertex v = x;
  for (Hops i = 0; i < hops && v != tr.source; ++i) v = tr.parent[v];
  return v;
}

Vertex descend_from_source(const ShortestPathTree& tr, Vertex x, Hops hops) {
  return climb(tr, x, std::max<Hops>(0, tr.dist_h[x] - hops));
}

}  // namespace

void QuerySession::run_flows(std::deque<ChainState> work, HitSet& out, bool& tainted) {
  const QueryOptions& opt = eng_.options();
  const Graph& g = idx_.graph();
  const GeoScale& geo = eng_.geo();
  const LandmarkSets& lm = eng_.landmarks();

  auto candidate = [&](const ChainState& st, Weight mid) {
    Weight w = add_w(add_w(st.off_s, mid), st.off_t);
    offer(out.s, out.t, w);
    out.L = std::min(out.L, w);
  };
  auto add_h = [&](Vertex x) {
    if (std::find(out.H.begin(), out.H.end(), x) != out.H.end()) return;
    if (static_cast<int>(out.H.size()) >= opt.hitset_cap) {
      note(Fallback::kHitSetCap, tainted);
      return;
    }
    out.H.push_back(x);
  };
  auto walk = [&](const ShortestPathTree& tr, Vertex x, int level, bool from_source) -> Vertex {
    const Hops budget = Hops{1} << level;
    std::optional<Vertex> y = from_source ? landmark_from_source(tr, lm, x, level, budget)
                                          : landmark_toward_source(tr, lm, x, level, budget);
    if (y) return *y;
    if (opt.strict) throw LandmarkMiss(fmt::format("no level-{} landmark within {} hops of {}", level, budget, x));
    note(Fallback::kLandmarkMiss, tainted);
    return from_source ? descend_from_source(tr, x, budget) : climb(tr, x, budget);
  };

  while (!work.empty()) {
    ChainState st = work.front();
    work.pop_front();
    if (!out.seen.emplace(st.code(), st.off_s, st.off_t).second) continue;
    if (++out.states > opt.state_cap) {
      note(Fallback::kStateCap, tainted);
      break;
    }
    if (st.s == st.t) {
      candidate(st, 0);
      continue;
    }
    const OrientedFaults o = idx_.classify(st.s, st.t, faults_);
    if (o.tag == CaseTag::kNoFaultOnPrimary) {
      candidate(st, idx_.dist_w(st.s, st.t));
      continue;
    }
    if (o.tag == CaseTag::kSingleEffective) {
      candidate(st, idx_.dist_1f_w(st.s, st.t, o.e1));
      continue;
    }
    const PairRule rule = o.tag == CaseTag::kBothPrimary ? PairRule::kBothPrimary : PairRule::kPrimarySecondary;
    if (rule != st.rule || (rule == PairRule::kPrimarySecondary && o.e1 != st.e1)) {
      if (st.reroutes >= opt.reroute_cap) {
        note(Fallback::kRerouteCap, tainted);
        continue;
      }
      ChainState r = st;
      r.rule = rule;
      r.e1 = o.e1;
      r.src = SideState{};
      r.dst = SideState{};
      ++r.reroutes;
      if (rule == PairRule::kBothPrimary) {
        r.src_case = r.dst_case = SideCase::kPrimary;
        work.push_back(r);
      } else {
        for (SideCase cs : {SideCase::kPrimary, SideCase::kSecondary}) {
          for (SideCase ct : {SideCase::kPrimary, SideCase::kSecondary}) {
            r.src_case = cs;
            r.dst_case = ct;
            work.push_back(r);
          }
        }
      }
      continue;
    }

    const PairProfile prof = profile_of(idx_, st.s, st.t, o);
    MaxKey key;
    key.s = st.s;
    key.t = st.t;
    key.rule = rule;
    key.src = side_condition(st.src.phase, st.src_case, prof.src, geo, st.src.clean);
    key.dst = side_condition(st.dst.phase, st.dst_case, prof.dst, geo, st.dst.clean);
    const bool in_schedule = exact_budget_ok(lm, st.s, st.t, st.src.phase, st.dst.phase, prof) &&
                             (st.src.phase != Phase::kClean || st.src.registered) &&
                             (st.dst.phase != Phase::kClean || st.dst.registered);
    std::optional<MaxEntry> entry;
    const std::uint64_t code = key.pack();
    if (auto hit = lookups_.find(code); hit != lookups_.end() && in_schedule) {
      entry = hit->second;
    } else if (in_schedule) {
      if (current_ != nullptr) ++current_->probes;
      entry = eng_.registry().lookup(key);
      lookups_.emplace(code, entry);
    } else {
      if (opt.strict) throw MissingKey("key outside the built schedule: " + key.describe());
      if (current_ != nullptr) ++current_->probes;
      note(Fallback::kOffSchedule, tainted);
      entry = compute_entry(idx_, geo, key);
    }
    log(fmt::format("  probe {} -> {}", key.describe(),
                    entry ? fmt::format("[{},{}] {}", entry->first, entry->second, idx_.pg().hops(entry->length_w))
                          : std::string("absent")));
    if (!entry) continue;
    const bool sat = satisfies(idx_, geo, key, o);
    if (sat) {
      candidate(st, entry->length_w);
      // The argmax is the fault set itself: this pair is settled exactly.
      if (FaultSet{entry->first, entry->second} == faults_) continue;
    }

    for (Vertex x : endpoints_of(g, *entry)) {
      add_h(x);
      const bool sx = idx_.dist_w(st.s, x) != kInf && idx_.avoids(st.s, x, faults_);
      const bool xt = idx_.dist_w(x, st.t) != kInf && idx_.avoids(x, st.t, faults_);
      if (sx && xt) {
        candidate(st, add_w(idx_.dist_w(st.s, x), idx_.dist_w(x, st.t)));
        continue;
      }
      if (!sx && !xt) continue;

      // Advance the side whose anchor reaches x along an intact path.
      const bool src_side = sx;
      const Vertex anchor = src_side ? st.s : st.t;
      const SideState& sd = src_side ? st.src : st.dst;
      const SideCase cs = src_side ? st.src_case : st.dst_case;
      const SideProfile& sp = src_side ? prof.src : prof.dst;
      const SideCond& cond = src_side ? key.src : key.dst;
      const ShortestPathTree& tr = idx_.spt(anchor);
      if (sd.phase == Phase::kClean) continue;

      ChainState ns = st;
      SideState& nsd = src_side ? ns.src : ns.dst;
      if (sd.phase != Phase::kCloseE1 && is_clean(tr, x, fe_)) {
        nsd.prior = sd.phase;
        nsd.phase = Phase::kClean;
        nsd.clean = x;
        nsd.registered = in_schedule && !close_step_side(cond);
        work.push_back(ns);
        continue;
      }

      auto move = [&](Vertex y, Phase phase) {
        if (src_side) {
          ns.off_s = add_w(ns.off_s, idx_.dist_w(anchor, y));
          ns.s = y;
        } else {
          ns.off_t = add_w(ns.off_t, idx_.dist_w(y, anchor));
          ns.t = y;
        }
        nsd = SideState{phase, phase, kNoVertex, false};
        SideState& other = src_side ? ns.dst : ns.src;
        if (other.phase == Phase::kClean) other = SideState{other.prior, other.prior, kNoVertex, false};
        work.push_back(ns);
      };

      if (cs == SideCase::kPrimary) {
        if (sd.phase == Phase::kFresh) move(walk(tr, x, level_of(sp.hp), false), Phase::kDClose);
        continue;
      }
      switch (sd.phase) {
        case Phase::kFresh:
          if (sp.hs <= sp.hp) {
            move(walk(tr, x, level_of(sp.hs), false), Phase::kDCloseSec);
          } else {
            move(walk(tr, x, level_of(sp.hp), true), Phase::kCloseE1);
          }
          break;
        case Phase::kCloseE1:
          if (obs_ != nullptr) {
            TrapezoidEvent ev;
            ev.y = anchor;
            ev.t = src_side ? st.t : st.s;
            ev.p = x;
            ev.faults = idx_.classify(ev.y, ev.t, faults_);
            ev.satisfied = sat;
            obs_->on_trapezoid(ev);
          }
          move(x, Phase::kTrapezoid);
          break;
        case Phase::kTrapezoid: move(walk(tr, x, level_of(sp.hs), false), Phase::kDCloseSec); break;
        default: break;
      }
    }
  }
}

}  // namespace dfo
