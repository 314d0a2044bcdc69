#include "dfo/fault_set.hpp"

#include <algorithm>

namespace dfo {

FaultSet::FaultSet(std::initializer_list<EdgeId> edges) {
  for (EdgeId e : edges) add(e);
}

void FaultSet::add(EdgeId e) {
  if (e < 0) throw std::invalid_argument("FaultSet: negative edge id");
  if (contains(e)) return;
  if (size_ == 2) throw std::invalid_argument("FaultSet: at most two faults");
  e_[size_++] = e;
  if (size_ == 2 && e_[0] > e_[1]) std::swap(e_[0], e_[1]);
}

FaultEndpoints::FaultEndpoints(const Graph& g, const FaultSet& f) {
  for (EdgeId e : f) {
    v[count++] = g.edge(e).u;
    v[count++] = g.edge(e).v;
  }
}

FaultEndpoints::FaultEndpoints(const Graph& g, EdgeId a, EdgeId b) {
  for (EdgeId e : {a, b}) {
    if (e == kNoEdge) continue;
    v[count++] = g.edge(e).u;
    v[count++] = g.edge(e).v;
  }
}

}  // namespace dfo

namespace dfo {

const char* to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::kNoFaultOnPrimary: return "NO_FAULT_ON_PRIMARY";
    case CaseTag::kSingleEffective: return "SINGLE_EFFECTIVE";
    case CaseTag::kBothPrimary: return "BOTH_PRIMARY";
    case CaseTag::kPrimaryPlusSecondary: return "PRIMARY_PLUS_SECONDARY";
  }
  return "?";
}

}  // namespace dfo
