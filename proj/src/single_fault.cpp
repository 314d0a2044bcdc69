#include "dfo/single_fault.hpp"

namespace dfo {

std::size_t SingleFaultIndex::stored_trees() const {
  std::size_t k = 0;
  for (const auto& t : trees_)
    if (t.source != kNoVertex) ++k;
  return k;
}

SingleFaultIndex build_single_fault(const PerturbedGraph& pg, const BaseTrees& base) {
  SingleFaultIndex idx;
  const Vertex n = pg.n();
  idx.n_ = n;
  idx.trees_.resize(static_cast<std::size_t>(n) * n);
  for (Vertex s = 0; s < n; ++s) {
    const ShortestPathTree& ts = base[s];
    for (Vertex c : ts.preorder) {
      if (c == s) continue;
      idx.trees_[static_cast<std::size_t>(s) * n + c] = shortest_path_tree(pg, s, ts.parent_edge[c]);
    }
  }
  return idx;
}

Weight PathIndex::dist_1f_w(Vertex s, Vertex t, EdgeId e) const {
  const ShortestPathTree* tr = fault_tree(s, e);
  if (tr == nullptr || !spt(s).is_ancestor(spt(s).child_of(e, graph().edge(e)), t)) return dist_w(s, t);
  return tr->dist_w[t];
}

bool PathIndex::edge_on_secondary(Vertex s, Vertex t, EdgeId e1, EdgeId e2) const {
  const ShortestPathTree* tr = fault_tree(s, e1);
  if (tr == nullptr || e1 == e2) return false;
  return tr->edge_above(e2, graph().edge(e2), t);
}

OrientedFaults PathIndex::classify(Vertex s, Vertex t, const FaultSet& f) const {
  OrientedFaults o;
  const ShortestPathTree& ts = spt(s);
  EdgeId on[2];
  EdgeId off = kNoEdge;
  int k = 0;
  for (EdgeId e : f) {
    if (on_path(s, t, e)) {
      on[k++] = e;
    } else {
      off = e;
    }
  }
  if (k == 0) return o;
  auto label = [&](const ShortestPathTree& tr, EdgeId e, Vertex& near, Vertex& far) {
    const Edge& ed = graph().edge(e);
    Vertex c = tr.child_of(e, ed);
    if (c == kNoVertex) {
      // Not a tree edge: orient by distance in that tree.
      bool u_first = tr.dist_w[ed.u] <= tr.dist_w[ed.v];
      near = u_first ? ed.u : ed.v;
      far = u_first ? ed.v : ed.u;
    } else {
      far = c;
      near = ed.other(c);
    }
  };
  if (k == 2) {
    o.tag = CaseTag::kBothPrimary;
    const Edge& x = graph().edge(on[0]);
    const Edge& y = graph().edge(on[1]);
    Vertex cx = ts.child_of(on[0], x), cy = ts.child_of(on[1], y);
    bool x_first = ts.dist_w[cx] < ts.dist_w[cy];
    o.e1 = x_first ? on[0] : on[1];
    o.e2 = x_first ? on[1] : on[0];
    label(ts, o.e1, o.a, o.b);
    label(ts, o.e2, o.c, o.d);
    return o;
  }
  o.e1 = on[0];
  label(ts, o.e1, o.a, o.b);
  if (off == kNoEdge) {
    o.tag = CaseTag::kSingleEffective;
    return o;
  }
  o.e2 = off;
  const ShortestPathTree* sec = fault_tree(s, o.e1);
  label(*sec, o.e2, o.c, o.d);
  o.tag = edge_on_secondary(s, t, o.e1, o.e2) ? CaseTag::kPrimaryPlusSecondary : CaseTag::kSingleEffective;
  return o;
}

Hops dist_1f(const PathIndex& idx, Vertex s, Vertex t, EdgeId e) { return idx.dist_1f(s, t, e); }

bool edge_on_secondary(const PathIndex& idx, Vertex s, Vertex t, EdgeId e1, EdgeId e2) {
  return idx.edge_on_secondary(s, t, e1, e2);
}

OrientedFaults orient_faults(const PathIndex& idx, Vertex s, Vertex t, const FaultSet& f) {
  OrientedFaults o = idx.classify(s, t, f);
  if (o.tag == CaseTag::kNoFaultOnPrimary) {
    throw ClassificationMismatch("orient_faults: no fault lies on the primary path");
  }
  return o;
}

DistanceVector two_fault_dist_vector(const PerturbedGraph& pg, Vertex s, const FaultSet& f) {
  DistanceWorkspace ws;
  ws.run(pg, s, f.size() > 0 ? f[0] : kNoEdge, f.size() > 1 ? f[1] : kNoEdge);
  DistanceVector out;
  out.dist_w = ws.dist();
  out.dist_h.resize(out.dist_w.size());
  for (std::size_t i = 0; i < out.dist_w.size(); ++i) out.dist_h[i] = pg.hops(out.dist_w[i]);
  return out;
}

}  // namespace dfo
