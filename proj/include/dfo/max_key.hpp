#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dfo/single_fault.hpp"

namespace dfo {

enum class Variant : std::uint8_t {
  kPrimaryIntact = 0,  // prefix of the primary path intact
  kBothIntact = 1,     // prefixes of primary and secondary intact
  kGeometric = 2,      // (1+eps)^i primary prefix and dist secondary prefix intact
  kClean = 3,          // clean vertex is clean from the pair
};

enum class PairRule : std::uint8_t {
  kPrimarySecondary = 0,  // first edge on st, second on st <> first and off st
  kBothPrimary = 1,       // both edges on st
};

const char* to_string(Variant v);
const char* to_string(PairRule r);

struct SideCond {
  Variant variant = Variant::kPrimaryIntact;
  Hops dist = 1;
  int geo = 0;
  Vertex clean = kNoVertex;

  friend bool operator==(const SideCond&, const SideCond&) = default;
};

struct MaxKey {
  Vertex s = 0;
  Vertex t = 0;
  SideCond src;
  SideCond dst;
  PairRule rule = PairRule::kPrimarySecondary;

  // 59-bit encoding; vertices, budgets and exponents must be < 512.
  std::uint64_t pack() const;
  static MaxKey unpack(std::uint64_t code);
  std::string describe() const;

  friend bool operator==(const MaxKey&, const MaxKey&) = default;
};

inline constexpr Vertex kMaxKeyVertices = 512;

struct MaxEntry {
  EdgeId first = kNoEdge;   // edge on st
  EdgeId second = kNoEdge;  // edge on st <> first (or the farther primary edge)
  Weight length_w = 0;      // perturbed length of st <> {first, second}

  friend bool operator==(const MaxEntry&, const MaxEntry&) = default;
};

// (1+eps)^i prefixes. Exponents giving the same floor are folded to the
// smallest one so equal conditions share one key.
class GeoScale {
 public:
  GeoScale() = default;
  GeoScale(double eps, Hops max_h);

  double epsilon() const { return eps_; }
  // Largest i with (1+eps)^i <= h, canonicalised; 0 when h < 1.
  int exponent_for(Hops h) const;
  Hops prefix(int i) const;

 private:
  double eps_ = 0.25;
  std::vector<Hops> floor_of_;  // floor((1+eps)^i)
  std::vector<int> canonical_;
};

// Ladder position of one side of a maximiser chain.
enum class Phase : std::uint8_t {
  kFresh = 0,      // nothing known yet
  kDClose = 1,     // D-close to the primary fault
  kCloseE1 = 2,    // close to the primary fault, detour leaves the secondary path
  kTrapezoid = 3,  // output of the close-vertex maximiser, trapezoid-free
  kDCloseSec = 4,  // D-close to the secondary fault
  kClean = 5,
};

enum class SideCase : std::uint8_t { kPrimary = 0, kSecondary = 1 };

const char* to_string(Phase p);

// Hop distances from one anchor to the faults: hp to the fault on the anchor's
// primary path, hs to the secondary fault along the secondary path.
struct SideProfile {
  Hops hp = 0;
  Hops hs = 0;
};

struct PairProfile {
  SideProfile src;
  SideProfile dst;
};

// Profile of an oriented fault pair relative to (s,t).
PairProfile profile_of(const PathIndex& idx, Vertex s, Vertex t, const OrientedFaults& o);

// Largest power of two <= h, or 1 when h <= 1.
Hops pow2_floor(Hops h);

SideCond side_condition(Phase phase, SideCase side_case, const SideProfile& p, const GeoScale& geo,
                        Vertex clean = kNoVertex);

// Budget a condition asks of the anchor's landmark levels (0 when it only
// uses powers of two or a clean vertex).
Hops exact_budget(Phase phase, const SideProfile& p);

// Orients a candidate pair under a rule without classification; the caller
// guarantees eligibility.
OrientedFaults orient_pair(const PathIndex& idx, Vertex s, Vertex t, EdgeId first, EdgeId second, PairRule rule);

bool eligible_pair(const PathIndex& idx, Vertex s, Vertex t, EdgeId x, EdgeId y, PairRule rule);

// Key predicate for an oriented pair at (key.s, key.t).
bool satisfies(const PathIndex& idx, const GeoScale& geo, const MaxKey& key, const OrientedFaults& o);
// Convenience: orients {x,y} under key.rule; false when ineligible.
bool satisfies(const PathIndex& idx, const GeoScale& geo, const MaxKey& key, EdgeId x, EdgeId y);

}  // namespace dfo
