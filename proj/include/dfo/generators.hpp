#pragma once

#include <cstdint>

#include "dfo/graph.hpp"

namespace dfo {

// Erdos-Renyi G(n,p). With keep_largest_component the result is relabelled
// to the largest connected component (vertex order preserved).
Graph make_gnp(Vertex n, double p, std::uint64_t seed, bool keep_largest_component = true);
Graph make_grid(Vertex rows, Vertex cols);
Graph make_cycle(Vertex n);
Graph make_complete(Vertex n);
Graph make_path(Vertex n);

// Cycle 0..n-1 plus `chords` random chords spanning at least `min_span` hops.
Graph make_cycle_with_chords(Vertex n, int chords, Vertex min_span, std::uint64_t seed);

Graph largest_component(const Graph& g);

}  // namespace dfo
