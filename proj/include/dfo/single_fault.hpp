#pragma once

#include <stdexcept>
#include <vector>

#include "dfo/spt.hpp"

namespace dfo {

class ClassificationMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// For every source s and every tree edge e of T_s, the shortest path tree of
// G - e rooted at s. Slots are addressed by (s, lower endpoint of e in T_s).
class SingleFaultIndex {
 public:
  SingleFaultIndex() = default;

  Vertex n() const { return n_; }
  // nullptr when e is not a tree edge of T_s.
  const ShortestPathTree* tree(const BaseTrees& base, const Graph& g, Vertex s, EdgeId e) const {
    Vertex c = base[s].child_of(e, g.edge(e));
    return c == kNoVertex ? nullptr : &trees_[static_cast<std::size_t>(s) * n_ + c];
  }
  const ShortestPathTree& slot(Vertex s, Vertex child) const {
    return trees_[static_cast<std::size_t>(s) * n_ + child];
  }
  std::size_t stored_trees() const;

  friend SingleFaultIndex build_single_fault(const PerturbedGraph& pg, const BaseTrees& base);

 private:
  Vertex n_ = 0;
  std::vector<ShortestPathTree> trees_;
};

SingleFaultIndex build_single_fault(const PerturbedGraph& pg, const BaseTrees& base);

// Read-only view over the graph, the fault-free trees and the single-fault
// trees. Cheap to copy; does not own its parts.
class PathIndex {
 public:
  PathIndex(const PerturbedGraph& pg, const BaseTrees& base, const SingleFaultIndex& sfi)
      : pg_(&pg), base_(&base), sfi_(&sfi) {}

  const PerturbedGraph& pg() const { return *pg_; }
  const Graph& graph() const { return pg_->graph; }
  const BaseTrees& base() const { return *base_; }
  const ShortestPathTree& spt(Vertex s) const { return (*base_)[s]; }
  Vertex n() const { return pg_->n(); }

  // Tree of G - e from s; nullptr when e is off T_s.
  const ShortestPathTree* fault_tree(Vertex s, EdgeId e) const {
    return sfi_->tree(*base_, pg_->graph, s, e);
  }

  Weight dist_w(Vertex s, Vertex t) const { return spt(s).dist_w[t]; }
  Hops dist_h(Vertex s, Vertex t) const { return spt(s).dist_h[t]; }

  // e lies on the unique s-t path (tree test).
  bool on_path(Vertex s, Vertex t, EdgeId e) const {
    return spt(s).edge_above(e, graph().edge(e), t);
  }
  // Unique s-x path avoids every fault in f.
  bool avoids(Vertex s, Vertex x, const FaultSet& f) const {
    for (EdgeId e : f)
      if (on_path(s, x, e)) return false;
    return true;
  }

  Weight dist_1f_w(Vertex s, Vertex t, EdgeId e) const;
  Hops dist_1f(Vertex s, Vertex t, EdgeId e) const { return pg_->hops(dist_1f_w(s, t, e)); }

  // Requires e1 on st: e2 lies on st <> e1.
  bool edge_on_secondary(Vertex s, Vertex t, EdgeId e1, EdgeId e2) const;

  OrientedFaults classify(Vertex s, Vertex t, const FaultSet& f) const;

 private:
  const PerturbedGraph* pg_;
  const BaseTrees* base_;
  const SingleFaultIndex* sfi_;
};

Hops dist_1f(const PathIndex& idx, Vertex s, Vertex t, EdgeId e);
bool edge_on_secondary(const PathIndex& idx, Vertex s, Vertex t, EdgeId e1, EdgeId e2);
// Labels an already-active fault set; raises ClassificationMismatch when no
// fault lies on st.
OrientedFaults orient_faults(const PathIndex& idx, Vertex s, Vertex t, const FaultSet& f);

struct DistanceVector {
  std::vector<Weight> dist_w;
  std::vector<Hops> dist_h;
};

DistanceVector two_fault_dist_vector(const PerturbedGraph& pg, Vertex s, const FaultSet& f);

}  // namespace dfo
