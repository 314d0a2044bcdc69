#include "dfo/generators.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace dfo {

Graph make_gnp(Vertex n, double p, std::uint64_t seed, bool keep_largest_component) {
  if (n < 1) throw std::invalid_argument("gnp: n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp: p must be in [0,1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng) < p) g.add_edge(u, v);
    }
  }
  return keep_largest_component ? largest_component(g) : g;
}

Graph make_grid(Vertex rows, Vertex cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid: dimensions must be positive");
  Graph g(rows * cols);
  for (Vertex r = 0; r < rows; ++r) {
    for (Vertex c = 0; c < cols; ++c) {
      Vertex v = r * cols + c;
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, v + cols);
    }
  }
  return g;
}

Graph make_cycle(Vertex n) {
  if (n < 3) throw std::invalid_argument("cycle: n must be at least 3");
  Graph g(n);
  for (Vertex v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph make_complete(Vertex n) {
  if (n < 1) throw std::invalid_argument("complete: n must be positive");
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph make_path(Vertex n) {
  if (n < 1) throw std::invalid_argument("path: n must be positive");
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph make_cycle_with_chords(Vertex n, int chords, Vertex min_span, std::uint64_t seed) {
  Graph g = make_cycle(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  int added = 0;
  for (int attempt = 0; added < chords && attempt < 1000 * (chords + 1); ++attempt) {
    Vertex u = pick(rng), v = pick(rng);
    Vertex gap = std::abs(u - v);
    gap = std::min(gap, n - gap);
    if (gap < std::max<Vertex>(2, min_span) || g.find_edge(u, v) != kNoEdge) continue;
    g.add_edge(u, v);
    ++added;
  }
  return g;
}

Graph largest_component(const Graph& g) {
  const Vertex n = g.n();
  std::vector<Vertex> comp(n, -1);
  std::vector<Vertex> size;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    Vertex id = static_cast<Vertex>(size.size());
    size.push_back(0);
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      ++size[id];
      for (const Incidence& inc : g.adj(u)) {
        if (comp[inc.to] == -1) {
          comp[inc.to] = id;
          stack.push_back(inc.to);
        }
      }
    }
  }
  if (size.size() <= 1) return g;
  Vertex best = static_cast<Vertex>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<Vertex> relabel(n, -1);
  Vertex k = 0;
  for (Vertex v = 0; v < n; ++v)
    if (comp[v] == best) relabel[v] = k++;
  Graph out(k);
  for (const Edge& e : g.edges()) {
    if (comp[e.u] == best) out.add_edge(relabel[e.u], relabel[e.v]);
  }
  return out;
}

}  // namespace dfo
