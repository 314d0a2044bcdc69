#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dfo/fault_set.hpp"
#include "dfo/perturbed.hpp"

namespace dfo {

class TieDetected : public std::runtime_error {
 public:
  explicit TieDetected(Vertex v);
  Vertex vertex() const { return vertex_; }

 private:
  Vertex vertex_;
};

class UnreachableVertex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShortestPathTree {
  Vertex source = kNoVertex;
  std::vector<Vertex> parent;       // self at source, kNoVertex when unreachable
  std::vector<EdgeId> parent_edge;  // kNoEdge at source and unreachable vertices
  std::vector<Weight> dist_w;
  std::vector<Hops> dist_h;
  std::vector<std::int32_t> tin;   // preorder index, -1 when unreachable
  std::vector<std::int32_t> tout;  // last preorder index inside the subtree
  std::vector<Vertex> preorder;

  bool reachable(Vertex v) const { return tin[v] >= 0; }

  // u lies on the tree path source -> v (both ends inclusive).
  bool is_ancestor(Vertex u, Vertex v) const {
    return tin[u] >= 0 && tin[v] >= 0 && tin[u] <= tin[v] && tin[v] <= tout[u];
  }

  // Lower endpoint of e when e is a tree edge, else kNoVertex.
  Vertex child_of(EdgeId e, const Edge& ed) const {
    if (parent_edge[ed.v] == e) return ed.v;
    if (parent_edge[ed.u] == e) return ed.u;
    return kNoVertex;
  }

  // e is a tree edge and t hangs below it: e lies on the tree path to t.
  bool edge_above(EdgeId e, const Edge& ed, Vertex t) const {
    Vertex c = child_of(e, ed);
    return c != kNoVertex && is_ancestor(c, t);
  }
};

class LcaIndex {
 public:
  LcaIndex() = default;
  explicit LcaIndex(const ShortestPathTree& tree);

  Vertex lca(Vertex u, Vertex v) const;

 private:
  std::vector<Vertex> euler_;
  std::vector<std::int32_t> depth_;
  std::vector<std::int32_t> first_;
  std::vector<std::vector<std::int32_t>> table_;  // argmin depth positions
};

// Dijkstra on G minus up to two banned edges, with tie detection: a vertex
// reachable through two distinct predecessors at equal weight raises.
ShortestPathTree shortest_path_tree(const PerturbedGraph& pg, Vertex s,
                                    EdgeId ban_a = kNoEdge, EdgeId ban_b = kNoEdge);

std::pair<ShortestPathTree, LcaIndex> build_spt(const PerturbedGraph& pg, Vertex s);

// Distances only; reuses caller buffers. Same tie detection.
class DistanceWorkspace {
 public:
  void run(const PerturbedGraph& pg, Vertex s, EdgeId ban_a, EdgeId ban_b);
  const std::vector<Weight>& dist() const { return dist_; }

 private:
  std::vector<Weight> dist_;
  std::vector<EdgeId> via_;
  std::vector<std::pair<Weight, Vertex>> heap_;
};

// Fault-free trees for every source.
struct BaseTrees {
  std::vector<ShortestPathTree> tree;
  std::vector<LcaIndex> lca;

  const ShortestPathTree& operator[](Vertex s) const { return tree[s]; }
};

BaseTrees build_all_spts(const PerturbedGraph& pg);

// e on the unique s-t path, by |st| = |se| + w(e) + |et| with a consistent
// endpoint pairing. False when t is unreachable from s.
bool edge_on_path(const PerturbedGraph& pg, const BaseTrees& spts, Vertex s, Vertex t, EdgeId e);

// No fault endpoint strictly between the tree source and x.
bool prefix_intact(const ShortestPathTree& spt, Vertex x, const FaultEndpoints& f);
// No fault endpoint inside the subtree rooted at x.
bool subtree_intact(const ShortestPathTree& spt, Vertex x, const FaultEndpoints& f);
bool is_clean(const ShortestPathTree& spt, Vertex x, const FaultEndpoints& f);

bool prefix_intact(const Graph& g, const ShortestPathTree& spt, Vertex x, const FaultSet& f);
bool subtree_intact(const Graph& g, const ShortestPathTree& spt, Vertex x, const FaultSet& f);
bool is_clean(const Graph& g, const ShortestPathTree& spt, Vertex x, const FaultSet& f);

// Vertices of the tree path from the source to x, source first.
std::vector<Vertex> tree_path(const ShortestPathTree& spt, Vertex x);

}  // namespace dfo
