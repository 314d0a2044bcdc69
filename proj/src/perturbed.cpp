#include "dfo/perturbed.hpp"

#include <random>
#include <stdexcept>

namespace dfo {

PerturbedGraph perturb(Graph g, std::uint64_t seed, PerturbationScheme scheme) {
  const Weight n = std::max<Weight>(1, g.n());
  Weight base = 0;
  Weight r_hi = 0;  // exclusive
  if (scheme == PerturbationScheme::kWide) {
    if (n > 2048) throw std::invalid_argument("perturb: wide scheme supports n <= 2048");
    r_hi = Weight{1} << 40;
    base = n * r_hi;
  } else {
    base = n * n * n;
    r_hi = std::max<Weight>(2, n * n);
  }
  PerturbedGraph pg;
  pg.graph = std::move(g);
  pg.base = base;
  pg.seed = seed;
  pg.scheme = scheme;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Weight> draw(1, r_hi - 1);
  pg.perturbation.resize(pg.graph.m());
  for (auto& r : pg.perturbation) r = draw(rng);
  return pg;
}

}  // namespace dfo
