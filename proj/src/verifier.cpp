#include "dfo/verifier.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>

#include <fmt/format.h>

namespace dfo {

std::vector<Hops> brute_bfs(const Graph& g, Vertex s, const FaultSet& f) {
  std::vector<Hops> dist(g.n(), kInfHops);
  std::deque<Vertex> q{s};
  dist[s] = 0;
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop_front();
    for (const Incidence& inc : g.adj(u)) {
      if (f.contains(inc.edge) || dist[inc.to] != kInfHops) continue;
      dist[inc.to] = dist[u] + 1;
      q.push_back(inc.to);
    }
  }
  return dist;
}

Hops brute_dist(const Graph& g, Vertex s, Vertex t, const FaultSet& f) { return brute_bfs(g, s, f)[t]; }

std::vector<EdgeId> brute_path_edges(const Graph& g, Vertex s, Vertex t, const FaultSet& f) {
  std::vector<Hops> dist = brute_bfs(g, t, f);
  std::vector<EdgeId> path;
  if (dist[s] == kInfHops) return path;
  for (Vertex u = s; u != t;) {
    for (const Incidence& inc : g.adj(u)) {
      if (!f.contains(inc.edge) && dist[inc.to] == dist[u] - 1) {
        path.push_back(inc.edge);
        u = inc.to;
        break;
      }
    }
  }
  return path;
}

std::vector<FaultSet> all_fault_sets(const Graph& g, int max_faults) {
  std::vector<FaultSet> out;
  out.emplace_back();
  if (max_faults >= 1)
    for (EdgeId a = 0; a < g.m(); ++a) out.push_back(FaultSet{a});
  if (max_faults >= 2)
    for (EdgeId a = 0; a < g.m(); ++a)
      for (EdgeId b = a + 1; b < g.m(); ++b) out.push_back(FaultSet{a, b});
  return out;
}

namespace {

Failure make_failure(Vertex s, Vertex t, const FaultSet& f, Hops expected, Hops got) {
  Failure x;
  x.s = s;
  x.t = t;
  x.faults.assign(f.begin(), f.end());
  x.expected = expected;
  x.got = got;
  return x;
}

// Truth rows for one fault set, filled on demand.
class TruthTable {
 public:
  TruthTable(const Graph& g, const FaultSet& f) : g_(g), f_(f), rows_(g.n()) {}
  const std::vector<Hops>& row(Vertex s) {
    if (rows_[s].empty()) rows_[s] = brute_bfs(g_, s, f_);
    return rows_[s];
  }
  Hops operator()(Vertex s, Vertex t) { return row(s)[t]; }

 private:
  const Graph& g_;
  FaultSet f_;
  std::vector<std::vector<Hops>> rows_;
};

class CheckingObserver : public QueryObserver {
 public:
  CheckingObserver(const Oracle& o, const FaultSet& f, TruthTable& truth, VerificationReport& rep,
                   const VerifyLimits& lim)
      : o_(o), f_(f), truth_(truth), rep_(rep), lim_(lim) {}

  void on_candidate(Vertex s, Vertex t, Weight w) override {
    if (!lim_.soundness) return;
    ++rep_.soundness.checks;
    if (o_.graph().hops(w) < truth_(s, t)) ++rep_.soundness.violations;
  }

  void on_trapezoid(const TrapezoidEvent& ev) override {
    if (!lim_.lemma_checks || !ev.satisfied || ev.faults.tag != CaseTag::kPrimaryPlusSecondary) return;
    const PerturbedGraph& pg = o_.graph();
    ShortestPathTree tr = shortest_path_tree(pg, ev.y, f_.size() > 0 ? f_[0] : kNoEdge,
                                             f_.size() > 1 ? f_[1] : kNoEdge);
    if (!tr.reachable(ev.t) || !tr.is_ancestor(ev.p, ev.t)) return;
    // p must sit on the first segment: the prefix is the fault-free y-p path.
    if (tr.dist_w[ev.p] != o_.index().dist_w(ev.y, ev.p)) return;
    // The argument needs |yp| >= |ya|; a unit budget does not force it.
    const ShortestPathTree& from_y = o_.index().spt(ev.y);
    if (from_y.dist_h[ev.p] < from_y.dist_h[ev.faults.a]) {
      ++rep_.trapezoid.skipped;
      return;
    }
    std::vector<Vertex> path = tree_path(tr, ev.t);
    const auto ip = std::find(path.begin(), path.end(), ev.p) - path.begin();
    const auto len = static_cast<std::ptrdiff_t>(path.size()) - 1;
    const Vertex a = ev.faults.a;
    const double eps = o_.geo().epsilon();

    ++rep_.trapezoid.checks;
    if (a != ev.p && a != ev.t) {
      const std::vector<Hops>& from_a = truth_.row(a);
      for (std::ptrdiff_t k = ip + 1; k < len; ++k) {
        const double reach = eps * static_cast<double>(std::min(k - ip, len - k));
        if (static_cast<double>(from_a[path[k]]) <= reach) {
          ++rep_.trapezoid.violations;
          break;
        }
      }
    }

    const OrientedFaults at_p = o_.index().classify(ev.p, ev.t, f_);
    if (at_p.tag != CaseTag::kPrimaryPlusSecondary || at_p.e1 != ev.faults.e1) return;
    const ShortestPathTree& prim = o_.index().spt(ev.p);
    const ShortestPathTree* sec = o_.index().fault_tree(ev.p, at_p.e1);
    if (sec == nullptr) return;
    std::vector<Vertex> to_a = tree_path(prim, at_p.a);
    std::vector<Vertex> to_c = tree_path(*sec, at_p.c);
    std::size_t common = 0;
    while (common < to_a.size() && common < to_c.size() && to_a[common] == to_c[common]) ++common;
    const Hops pz = static_cast<Hops>(common) - 1;
    const Hops pa = prim.dist_h[at_p.a];
    ++rep_.junction.checks;
    if (pz > o_.geo().prefix(o_.geo().exponent_for(pa))) ++rep_.junction.violations;
  }

 private:
  const Oracle& o_;
  FaultSet f_;
  TruthTable& truth_;
  VerificationReport& rep_;
  const VerifyLimits& lim_;
};

void record(VerificationReport& rep, const QueryOutcome& out, Vertex s, Vertex t, const FaultSet& f, Hops truth,
            std::size_t max_failures) {
  ++rep.queries;
  if (out.certified) {
    ++rep.certified;
  } else {
    ++rep.uncertified;
  }
  for (int k = 0; k < kFallbackKinds; ++k) rep.fallbacks[k] += out.fallbacks[k];
  rep.probe_max = std::max(rep.probe_max, out.probes);
  rep.probe_total += out.probes;
  if (out.distance == truth) {
    ++rep.matches;
    return;
  }
  ++rep.mismatches;
  if (out.certified) ++rep.certified_mismatches;
  if (rep.failures.size() < max_failures) rep.failures.push_back(make_failure(s, t, f, truth, out.distance));
}

}  // namespace

VerificationReport verify_exhaustive(const Oracle& oracle, const VerifyLimits& limits, std::string instance) {
  VerificationReport rep;
  rep.instance = std::move(instance);
  const Graph& g = oracle.graph().graph;
  rep.n = g.n();
  rep.m = g.m();
  for (const FaultSet& f : all_fault_sets(g, limits.max_faults)) {
    TruthTable truth(g, f);
    CheckingObserver obs(oracle, f, truth, rep, limits);
    std::unique_ptr<QuerySession> shared;
    if (!limits.fresh_sessions) shared = std::make_unique<QuerySession>(oracle.engine(), f, &obs);
    for (Vertex s = 0; s < g.n(); ++s) {
      for (Vertex t = 0; t < g.n(); ++t) {
        if (s == t) continue;
        QueryOutcome out;
        if (shared) {
          out = shared->query(s, t);
        } else {
          QuerySession one(oracle.engine(), f, &obs);
          out = one.query(s, t);
        }
        record(rep, out, s, t, f, truth(s, t), limits.max_failures);
      }
    }
  }
  return rep;
}

VerificationReport verify_single_fault(const Oracle& oracle, std::string instance) {
  VerificationReport rep;
  rep.instance = std::move(instance);
  const Graph& g = oracle.graph().graph;
  rep.n = g.n();
  rep.m = g.m();
  for (EdgeId e = 0; e < g.m(); ++e) {
    const FaultSet f{e};
    for (Vertex s = 0; s < g.n(); ++s) {
      const std::vector<Hops> truth = brute_bfs(g, s, f);
      for (Vertex t = 0; t < g.n(); ++t) {
        if (s == t) continue;
        QueryOutcome out;
        out.distance = oracle.index().dist_1f(s, t, e);
        record(rep, out, s, t, f, truth[t], 50);
      }
    }
  }
  return rep;
}

VerificationReport verify_registry(const Oracle& oracle, std::string instance) {
  VerificationReport rep;
  rep.instance = std::move(instance);
  const PathIndex& idx = oracle.index();
  const MaximiserRegistry& reg = oracle.registry();
  const Graph& g = idx.graph();
  const Vertex n = g.n();
  rep.n = n;
  rep.m = g.m();

  struct Candidate {
    OrientedFaults o;
    FaultSet f;
  };
  for (Vertex s = 0; s < n; ++s) {
    std::map<std::pair<EdgeId, EdgeId>, std::vector<Hops>> rows;
    const ShortestPathTree& ts = idx.spt(s);
    for (Vertex t = 0; t < n; ++t) {
      if (s == t || reg.keys(s, t).empty()) continue;
      std::vector<EdgeId> primary;
      for (Vertex v = t; v != s; v = ts.parent[v]) primary.push_back(ts.parent_edge[v]);
      std::array<std::vector<Candidate>, 2> by_rule;
      for (std::size_t i = 0; i < primary.size(); ++i) {
        for (std::size_t j = i + 1; j < primary.size(); ++j) {
          Candidate c{orient_pair(idx, s, t, primary[i], primary[j], PairRule::kBothPrimary),
                      FaultSet{primary[i], primary[j]}};
          by_rule[static_cast<int>(PairRule::kBothPrimary)].push_back(c);
        }
      }
      for (EdgeId e1 : primary) {
        for (EdgeId e2 = 0; e2 < g.m(); ++e2) {
          if (!eligible_pair(idx, s, t, e1, e2, PairRule::kPrimarySecondary) || !idx.on_path(s, t, e1)) continue;
          Candidate c{orient_pair(idx, s, t, e1, e2, PairRule::kPrimarySecondary), FaultSet{e1, e2}};
          by_rule[static_cast<int>(PairRule::kPrimarySecondary)].push_back(c);
        }
      }
      std::map<std::pair<EdgeId, EdgeId>, std::vector<EdgeId>> paths;
      auto keys = reg.keys(s, t);
      auto entries = reg.entries(s, t);
      for (std::size_t k = 0; k < keys.size(); ++k) {
        const MaxKey key = MaxKey::unpack(keys[k]);
        const MaxEntry& e = entries[k];
        const Hops entry_h = oracle.graph().hops(e.length_w);
        for (const Candidate& c : by_rule[static_cast<int>(key.rule)]) {
          if (!satisfies(idx, oracle.geo(), key, c.o)) continue;
          const std::pair<EdgeId, EdgeId> pk{c.f[0], c.f[1]};
          auto& row = rows[pk];
          if (row.empty()) row = brute_bfs(g, s, c.f);
          const Hops truth = row[t];
          ++rep.dominance.checks;
          if (entry_h < truth) ++rep.dominance.violations;
          auto& path = paths[pk];
          if (path.empty() && truth != kInfHops) path = brute_path_edges(g, s, t, c.f);
          const bool hit = std::find(path.begin(), path.end(), e.first) != path.end() ||
                           std::find(path.begin(), path.end(), e.second) != path.end();
          ++rep.hit_or_exact.checks;
          if (!hit && truth != kInfHops && entry_h != truth) ++rep.hit_or_exact.violations;
        }
      }
    }
  }
  return rep;
}

void VerificationReport::merge(const VerificationReport& o, std::size_t max_failures) {
  queries += o.queries;
  matches += o.matches;
  mismatches += o.mismatches;
  certified += o.certified;
  uncertified += o.uncertified;
  certified_mismatches += o.certified_mismatches;
  for (int k = 0; k < kFallbackKinds; ++k) fallbacks[k] += o.fallbacks[k];
  probe_max = std::max(probe_max, o.probe_max);
  probe_total += o.probe_total;
  for (auto [a, b] : {std::pair{&soundness, &o.soundness}, std::pair{&trapezoid, &o.trapezoid},
                      std::pair{&junction, &o.junction}, std::pair{&dominance, &o.dominance},
                      std::pair{&hit_or_exact, &o.hit_or_exact}}) {
    a->checks += b->checks;
    a->violations += b->violations;
    a->skipped += b->skipped;
  }
  for (const Failure& f : o.failures) {
    if (failures.size() >= max_failures) break;
    failures.push_back(f);
  }
}

std::string VerificationReport::summary() const {
  const double pct = queries == 0 ? 100.0 : 100.0 * static_cast<double>(matches) / queries;
  return fmt::format("{}: matches {:.4f}% ({}/{}), certified {:.4f}%, probes max {} mean {:.2f}, "
                     "soundness violations {}",
                     instance.empty() ? "instance" : instance, pct, matches, queries, 100.0 * certified_fraction(),
                     probe_max, probe_mean(), soundness.violations);
}

namespace {

nlohmann::json tally_json(const Tally& t) {
  return {{"checks", t.checks}, {"violations", t.violations}, {"skipped", t.skipped}};
}
Tally tally_from(const nlohmann::json& j) {
  return Tally{j.at("checks").get<std::uint64_t>(), j.at("violations").get<std::uint64_t>(),
               j.value("skipped", std::uint64_t{0})};
}

}  // namespace

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json fb = nlohmann::json::object();
  for (int k = 0; k < kFallbackKinds; ++k) fb[to_string(static_cast<Fallback>(k))] = fallbacks[k];
  nlohmann::json fails = nlohmann::json::array();
  for (const Failure& f : failures) {
    fails.push_back({{"s", f.s}, {"t", f.t}, {"faults", f.faults},
                     {"expected", f.expected == kInfHops ? nlohmann::json(nullptr) : nlohmann::json(f.expected)},
                     {"got", f.got == kInfHops ? nlohmann::json(nullptr) : nlohmann::json(f.got)}});
  }
  return {
      {"instance", instance},
      {"n", n},
      {"m", m},
      {"totals",
       {{"queries", queries},
        {"matches", matches},
        {"mismatches", mismatches},
        {"certified", certified},
        {"uncertified", uncertified},
        {"certified_mismatches", certified_mismatches}}},
      {"fallbacks", fb},
      {"probes", {{"max", probe_max}, {"total", probe_total}, {"mean", probe_mean()}}},
      {"checks",
       {{"soundness", tally_json(soundness)},
        {"trapezoid", tally_json(trapezoid)},
        {"junction", tally_json(junction)},
        {"dominance", tally_json(dominance)},
        {"hit_or_exact", tally_json(hit_or_exact)}}},
      {"failures", fails},
  };
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.instance = j.at("instance").get<std::string>();
  r.n = j.at("n").get<Vertex>();
  r.m = j.at("m").get<EdgeId>();
  const auto& tot = j.at("totals");
  r.queries = tot.at("queries").get<std::uint64_t>();
  r.matches = tot.at("matches").get<std::uint64_t>();
  r.mismatches = tot.at("mismatches").get<std::uint64_t>();
  r.certified = tot.at("certified").get<std::uint64_t>();
  r.uncertified = tot.at("uncertified").get<std::uint64_t>();
  r.certified_mismatches = tot.at("certified_mismatches").get<std::uint64_t>();
  for (int k = 0; k < kFallbackKinds; ++k)
    r.fallbacks[k] = j.at("fallbacks").at(to_string(static_cast<Fallback>(k))).get<std::uint64_t>();
  r.probe_max = j.at("probes").at("max").get<std::uint64_t>();
  r.probe_total = j.at("probes").at("total").get<std::uint64_t>();
  const auto& ch = j.at("checks");
  r.soundness = tally_from(ch.at("soundness"));
  r.trapezoid = tally_from(ch.at("trapezoid"));
  r.junction = tally_from(ch.at("junction"));
  r.dominance = tally_from(ch.at("dominance"));
  r.hit_or_exact = tally_from(ch.at("hit_or_exact"));
  for (const auto& f : j.at("failures")) {
    Failure x;
    x.s = f.at("s").get<Vertex>();
    x.t = f.at("t").get<Vertex>();
    x.faults = f.at("faults").get<std::vector<EdgeId>>();
    x.expected = f.at("expected").is_null() ? kInfHops : f.at("expected").get<Hops>();
    x.got = f.at("got").is_null() ? kInfHops : f.at("got").get<Hops>();
    r.failures.push_back(x);
  }
  return r;
}

}  // namespace dfo
