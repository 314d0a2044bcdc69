#pragma once

#include <cstdint>
#include <limits>

namespace dfo {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using Weight = std::int64_t;
using Hops = std::int32_t;

inline constexpr Vertex kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;
inline constexpr Weight kInf = std::numeric_limits<Weight>::max();
inline constexpr Hops kInfHops = std::numeric_limits<Hops>::max();

// Infinity absorbs under addition.
constexpr Weight add_w(Weight a, Weight b) {
  return (a == kInf || b == kInf) ? kInf : a + b;
}

}  // namespace dfo
