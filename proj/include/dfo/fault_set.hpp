#pragma once

#include <array>
#include <initializer_list>
#include <stdexcept>

#include "dfo/graph.hpp"

namespace dfo {

// At most two distinct edges, kept sorted so equality ignores order.
class FaultSet {
 public:
  FaultSet() = default;
  FaultSet(std::initializer_list<EdgeId> edges);

  void add(EdgeId e);

  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  EdgeId operator[](int i) const { return e_[i]; }
  bool contains(EdgeId e) const { return (size_ > 0 && e_[0] == e) || (size_ > 1 && e_[1] == e); }
  const EdgeId* begin() const { return e_.data(); }
  const EdgeId* end() const { return e_.data() + size_; }

  friend bool operator==(const FaultSet& a, const FaultSet& b) {
    return a.size_ == b.size_ && a.e_ == b.e_;
  }

 private:
  std::array<EdgeId, 2> e_{kNoEdge, kNoEdge};
  int size_ = 0;
};

// Endpoints of the faulty edges, flattened for the intactness predicates.
struct FaultEndpoints {
  std::array<Vertex, 4> v{kNoVertex, kNoVertex, kNoVertex, kNoVertex};
  int count = 0;

  FaultEndpoints() = default;
  FaultEndpoints(const Graph& g, const FaultSet& f);
  FaultEndpoints(const Graph& g, EdgeId a, EdgeId b);

  const Vertex* begin() const { return v.data(); }
  const Vertex* end() const { return v.data() + count; }
};

}  // namespace dfo

namespace dfo {

enum class CaseTag {
  kNoFaultOnPrimary,
  kSingleEffective,
  kBothPrimary,
  kPrimaryPlusSecondary,
};

const char* to_string(CaseTag tag);

// Faults labelled relative to an (s,t) pair. e1 = (a,b) lies on st with a
// nearer s. For kPrimaryPlusSecondary e2 = (c,d) lies on st<>e1 with c nearer
// s; for kBothPrimary e2 is the fault nearer t on st.
struct OrientedFaults {
  CaseTag tag = CaseTag::kNoFaultOnPrimary;
  EdgeId e1 = kNoEdge;
  EdgeId e2 = kNoEdge;
  Vertex a = kNoVertex, b = kNoVertex, c = kNoVertex, d = kNoVertex;
};

}  // namespace dfo
