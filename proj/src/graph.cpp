#include "dfo/graph.hpp"

#include <fstream>
#include <sstream>

namespace dfo {

ParseError::ParseError(int line, const std::string& what)
    : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

Graph::Graph(Vertex n) : n_(n), adj_(static_cast<std::size_t>(n)) {
  if (n < 0) throw VertexRangeError("negative vertex count");
}

std::uint64_t Graph::pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

EdgeId Graph::add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw VertexRangeError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                           ") out of range for n=" + std::to_string(n_));
  }
  if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
  auto [it, fresh] = index_.emplace(pair_key(u, v), m());
  if (!fresh) {
    throw DuplicateEdgeError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  EdgeId id = m();
  edges_.push_back({u, v});
  adj_[u].push_back({v, id});
  adj_[v].push_back({u, id});
  return id;
}

EdgeId Graph::find_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return kNoEdge;
  auto it = index_.find(pair_key(u, v));
  return it == index_.end() ? kNoEdge : it->second;
}

namespace {

// Next line with content, comments stripped. Returns false at EOF.
bool next_content_line(std::istream& in, std::string& out, int& line_no) {
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") != std::string::npos) {
      out = raw;
      return true;
    }
  }
  return false;
}

}  // namespace

Graph load_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "missing header");
  long long n = -1, m = -1;
  {
    std::istringstream ss(line);
    std::string extra;
    if (!(ss >> n >> m) || (ss >> extra)) throw ParseError(line_no, "expected \"n m\"");
  }
  if (n < 0 || m < 0) throw ParseError(line_no, "negative header value");
  if (n > (1LL << 20)) throw ParseError(line_no, "vertex count too large");

  Graph g(static_cast<Vertex>(n));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line, line_no)) {
      throw ParseError(line_no, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    }
    std::istringstream ss(line);
    long long u = 0, v = 0;
    std::string extra;
    if (!(ss >> u >> v) || (ss >> extra)) throw ParseError(line_no, "expected \"u v\"");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw VertexRangeError("line " + std::to_string(line_no) + ": vertex out of range");
    }
    try {
      g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    } catch (const DuplicateEdgeError& e) {
      throw DuplicateEdgeError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const VertexRangeError&) {
      throw;
    } catch (const GraphError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (next_content_line(in, line, line_no)) throw ParseError(line_no, "trailing content after edges");
  return g;
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  return load_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace dfo
