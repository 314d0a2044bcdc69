#pragma once

#include <cstdint>
#include <vector>

#include "dfo/graph.hpp"

namespace dfo {

enum class PerturbationScheme {
  // B = n * 2^40, r_e in [1, 2^40). Collisions between distinct paths are
  // negligible even across the millions of fault-restricted runs of a build.
  kWide,
  // B = n^3, r_e in [1, n^2). Hop-dominant but collides often at n >= 32.
  kCompact,
};

struct PerturbedGraph {
  Graph graph;
  Weight base = 1;
  std::vector<Weight> perturbation;
  std::uint64_t seed = 0;
  PerturbationScheme scheme = PerturbationScheme::kWide;

  Vertex n() const { return graph.n(); }
  Weight weight(EdgeId e) const { return base + perturbation[e]; }
  Hops hops(Weight w) const { return w == kInf ? kInfHops : static_cast<Hops>(w / base); }
};

PerturbedGraph perturb(Graph g, std::uint64_t seed,
                       PerturbationScheme scheme = PerturbationScheme::kWide);

}  // namespace dfo
