#include "dfo/spt.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <string>

namespace dfo {

TieDetected::TieDetected(Vertex v)
    : std::runtime_error("equal-weight shortest paths at vertex " + std::to_string(v)), vertex_(v) {}

namespace {

using HeapItem = std::pair<Weight, Vertex>;

// Core Dijkstra shared by the tree and distance-only variants.
void dijkstra_core(const PerturbedGraph& pg, Vertex s, EdgeId ban_a, EdgeId ban_b,
                   std::vector<Weight>& dist, std::vector<EdgeId>& via, std::vector<HeapItem>& heap) {
  const Vertex n = pg.n();
  dist.assign(n, kInf);
  via.assign(n, kNoEdge);
  heap.clear();
  dist[s] = 0;
  heap.push_back({0, s});
  auto cmp = std::greater<HeapItem>();
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), cmp);
    auto [d, u] = heap.back();
    heap.pop_back();
    if (d != dist[u]) continue;
    for (const Incidence& inc : pg.graph.adj(u)) {
      if (inc.edge == ban_a || inc.edge == ban_b) continue;
      Weight nd = d + pg.weight(inc.edge);
      Weight& cur = dist[inc.to];
      if (nd < cur) {
        cur = nd;
        via[inc.to] = inc.edge;
        heap.push_back({nd, inc.to});
        std::push_heap(heap.begin(), heap.end(), cmp);
      } else if (nd == cur && via[inc.to] != inc.edge) {
        throw TieDetected(inc.to);
      }
    }
  }
}

}  // namespace

ShortestPathTree shortest_path_tree(const PerturbedGraph& pg, Vertex s, EdgeId ban_a, EdgeId ban_b) {
  const Vertex n = pg.n();
  if (s < 0 || s >= n) throw std::out_of_range("source out of range");
  ShortestPathTree t;
  t.source = s;
  std::vector<HeapItem> heap;
  dijkstra_core(pg, s, ban_a, ban_b, t.dist_w, t.parent_edge, heap);

  t.parent.assign(n, kNoVertex);
  t.dist_h.assign(n, kInfHops);
  std::vector<std::vector<Vertex>> children(n);
  for (Vertex v = 0; v < n; ++v) {
    if (t.dist_w[v] == kInf) continue;
    t.dist_h[v] = pg.hops(t.dist_w[v]);
    if (v == s) {
      t.parent[v] = v;
    } else {
      Vertex p = pg.graph.edge(t.parent_edge[v]).other(v);
      t.parent[v] = p;
      children[p].push_back(v);
    }
  }

  t.tin.assign(n, -1);
  t.tout.assign(n, -1);
  t.preorder.clear();
  std::vector<std::pair<Vertex, std::size_t>> stack{{s, 0}};
  t.tin[s] = 0;
  t.preorder.push_back(s);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < children[v].size()) {
      Vertex c = children[v][next++];
      t.tin[c] = static_cast<std::int32_t>(t.preorder.size());
      t.preorder.push_back(c);
      stack.push_back({c, 0});
    } else {
      t.tout[v] = static_cast<std::int32_t>(t.preorder.size()) - 1;
      stack.pop_back();
    }
  }
  return t;
}

void DistanceWorkspace::run(const PerturbedGraph& pg, Vertex s, EdgeId ban_a, EdgeId ban_b) {
  dijkstra_core(pg, s, ban_a, ban_b, dist_, via_, heap_);
}

LcaIndex::LcaIndex(const ShortestPathTree& tree) {
  const Vertex n = static_cast<Vertex>(tree.parent.size());
  first_.assign(n, -1);
  if (tree.preorder.empty()) return;
  std::vector<std::vector<Vertex>> children(n);
  for (Vertex v : tree.preorder) {
    if (v != tree.source) children[tree.parent[v]].push_back(v);
  }
  std::vector<std::pair<Vertex, std::size_t>> stack{{tree.source, 0}};
  auto visit = [&](Vertex v, std::int32_t d) {
    if (first_[v] < 0) first_[v] = static_cast<std::int32_t>(euler_.size());
    euler_.push_back(v);
    depth_.push_back(d);
  };
  visit(tree.source, 0);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < children[v].size()) {
      Vertex c = children[v][next++];
      stack.push_back({c, 0});
      visit(c, static_cast<std::int32_t>(stack.size()) - 1);
    } else {
      stack.pop_back();
      if (!stack.empty()) visit(stack.back().first, static_cast<std::int32_t>(stack.size()) - 1);
    }
  }
  const std::size_t len = euler_.size();
  const int levels = std::bit_width(len);
  table_.assign(levels, {});
  table_[0].resize(len);
  for (std::size_t i = 0; i < len; ++i) table_[0][i] = static_cast<std::int32_t>(i);
  for (int k = 1; k < levels; ++k) {
    const std::size_t span = std::size_t{1} << k;
    table_[k].resize(len - span + 1);
    for (std::size_t i = 0; i + span <= len; ++i) {
      std::int32_t a = table_[k - 1][i];
      std::int32_t b = table_[k - 1][i + span / 2];
      table_[k][i] = depth_[a] <= depth_[b] ? a : b;
    }
  }
}

Vertex LcaIndex::lca(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= static_cast<Vertex>(first_.size()) || v >= static_cast<Vertex>(first_.size()) ||
      first_[u] < 0 || first_[v] < 0) {
    throw UnreachableVertex("lca: vertex not in tree");
  }
  std::int32_t l = std::min(first_[u], first_[v]);
  std::int32_t r = std::max(first_[u], first_[v]);
  int k = std::bit_width(static_cast<std::uint32_t>(r - l + 1)) - 1;
  std::int32_t a = table_[k][l];
  std::int32_t b = table_[k][r - (1 << k) + 1];
  return euler_[depth_[a] <= depth_[b] ? a : b];
}

std::pair<ShortestPathTree, LcaIndex> build_spt(const PerturbedGraph& pg, Vertex s) {
  ShortestPathTree t = shortest_path_tree(pg, s);
  LcaIndex idx(t);
  return {std::move(t), std::move(idx)};
}

BaseTrees build_all_spts(const PerturbedGraph& pg) {
  BaseTrees out;
  out.tree.reserve(pg.n());
  out.lca.reserve(pg.n());
  for (Vertex s = 0; s < pg.n(); ++s) {
    auto [t, idx] = build_spt(pg, s);
    out.tree.push_back(std::move(t));
    out.lca.push_back(std::move(idx));
  }
  return out;
}

bool edge_on_path(const PerturbedGraph& pg, const BaseTrees& spts, Vertex s, Vertex t, EdgeId e) {
  const ShortestPathTree& ts = spts[s];
  const ShortestPathTree& tt = spts[t];
  const Weight st = ts.dist_w[t];
  if (st == kInf) return false;
  const Edge& ed = pg.graph.edge(e);
  const Weight w = pg.weight(e);
  auto through = [&](Vertex near_s, Vertex near_t) {
    Weight a = ts.dist_w[near_s], b = tt.dist_w[near_t];
    return a != kInf && b != kInf && a + w + b == st;
  };
  return through(ed.u, ed.v) || through(ed.v, ed.u);
}

bool prefix_intact(const ShortestPathTree& spt, Vertex x, const FaultEndpoints& f) {
  for (Vertex v : f) {
    if (v != spt.source && v != x && spt.is_ancestor(v, x)) return false;
  }
  return true;
}

bool subtree_intact(const ShortestPathTree& spt, Vertex x, const FaultEndpoints& f) {
  for (Vertex v : f) {
    if (spt.is_ancestor(x, v)) return false;
  }
  return true;
}

bool is_clean(const ShortestPathTree& spt, Vertex x, const FaultEndpoints& f) {
  return prefix_intact(spt, x, f) && subtree_intact(spt, x, f);
}

bool prefix_intact(const Graph& g, const ShortestPathTree& spt, Vertex x, const FaultSet& f) {
  return prefix_intact(spt, x, FaultEndpoints(g, f));
}

bool subtree_intact(const Graph& g, const ShortestPathTree& spt, Vertex x, const FaultSet& f) {
  return subtree_intact(spt, x, FaultEndpoints(g, f));
}

bool is_clean(const Graph& g, const ShortestPathTree& spt, Vertex x, const FaultSet& f) {
  return is_clean(spt, x, FaultEndpoints(g, f));
}

std::vector<Vertex> tree_path(const ShortestPathTree& spt, Vertex x) {
  std::vector<Vertex> path;
  if (!spt.reachable(x)) return path;
  for (Vertex v = x;; v = spt.parent[v]) {
    path.push_back(v);
    if (v == spt.source) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace dfo
