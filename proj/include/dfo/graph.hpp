#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dfo/types.hpp"

namespace dfo {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

class DuplicateEdgeError : public GraphError {
 public:
  using GraphError::GraphError;
};

class VertexRangeError : public GraphError {
 public:
  using GraphError::GraphError;
};

struct Edge {
  Vertex u;
  Vertex v;

  Vertex other(Vertex x) const { return x == u ? v : u; }
};

struct Incidence {
  Vertex to;
  EdgeId edge;
};

// Simple undirected graph. Edge ids follow insertion order.
class Graph {
 public:
  Graph() = default;
  explicit Graph(Vertex n);

  EdgeId add_edge(Vertex u, Vertex v);

  Vertex n() const { return n_; }
  EdgeId m() const { return static_cast<EdgeId>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Incidence>& adj(Vertex v) const { return adj_[v]; }

  // kNoEdge when absent.
  EdgeId find_edge(Vertex u, Vertex v) const;

 private:
  static std::uint64_t pair_key(Vertex u, Vertex v);

  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adj_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
};

// Edge-list text: "n m" header, then m lines "u v". '#' starts a comment.
Graph load_graph(std::istream& in);
Graph load_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace dfo
