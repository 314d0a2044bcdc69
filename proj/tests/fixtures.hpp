#pragma once

#include <memory>
#include <sstream>
#include <string>

#include "dfo/oracle.hpp"

namespace dfo::testing {

inline Graph parse(const std::string& text) {
  std::istringstream in(text);
  return load_graph(in);
}

inline Graph p4() { return parse("4 3\n0 1\n1 2\n2 3\n"); }
inline Graph c5() { return parse("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n"); }
inline Graph k4() { return parse("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"); }

inline std::unique_ptr<Oracle> build(const Graph& g, std::uint64_t seed = 1) {
  OracleConfig cfg;
  cfg.seed = seed;
  return Oracle::build(g, cfg);
}

inline EdgeId edge(const Graph& g, Vertex u, Vertex v) { return g.find_edge(u, v); }

}  // namespace dfo::testing
