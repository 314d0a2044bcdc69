#include "dfo/max_key.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dfo {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::kPrimaryIntact: return "PRIMARY_INTACT";
    case Variant::kBothIntact: return "BOTH_INTACT";
    case Variant::kGeometric: return "GEOMETRIC";
    case Variant::kClean: return "CLEAN";
  }
  return "?";
}

const char* to_string(PairRule r) {
  return r == PairRule::kPrimarySecondary ? "PRIMARY_SECONDARY" : "BOTH_PRIMARY";
}

const char* to_string(Phase p) {
  switch (p) {
    case Phase::kFresh: return "fresh";
    case Phase::kDClose: return "dclose";
    case Phase::kCloseE1: return "close-e1";
    case Phase::kTrapezoid: return "trapezoid";
    case Phase::kDCloseSec: return "dclose-sec";
    case Phase::kClean: return "clean";
  }
  return "?";
}

namespace {

constexpr std::uint64_t kNine = 0x1FF;

std::uint64_t pack_side(const SideCond& c) {
  std::uint64_t bits = static_cast<std::uint64_t>(c.variant);
  if (c.variant == Variant::kClean) {
    bits |= (static_cast<std::uint64_t>(c.clean) & kNine) << 2;
  } else {
    bits |= (static_cast<std::uint64_t>(c.dist) & kNine) << 2;
    bits |= (static_cast<std::uint64_t>(c.geo) & kNine) << 11;
  }
  return bits;
}

SideCond unpack_side(std::uint64_t bits) {
  SideCond c;
  c.variant = static_cast<Variant>(bits & 3);
  if (c.variant == Variant::kClean) {
    c.clean = static_cast<Vertex>((bits >> 2) & kNine);
    c.dist = 1;
  } else {
    c.dist = static_cast<Hops>((bits >> 2) & kNine);
    c.geo = static_cast<int>((bits >> 11) & kNine);
  }
  return c;
}

void describe_side(std::ostream& os, const SideCond& c) {
  os << to_string(c.variant);
  switch (c.variant) {
    case Variant::kPrimaryIntact:
    case Variant::kBothIntact: os << "(" << c.dist << ")"; break;
    case Variant::kGeometric: os << "(i=" << c.geo << "," << c.dist << ")"; break;
    case Variant::kClean: os << "(" << c.clean << ")"; break;
  }
}

}  // namespace

std::uint64_t MaxKey::pack() const {
  return (static_cast<std::uint64_t>(s) & kNine) | ((static_cast<std::uint64_t>(t) & kNine) << 9) |
         (static_cast<std::uint64_t>(rule) << 18) | (pack_side(src) << 19) | (pack_side(dst) << 39);
}

MaxKey MaxKey::unpack(std::uint64_t code) {
  MaxKey k;
  k.s = static_cast<Vertex>(code & kNine);
  k.t = static_cast<Vertex>((code >> 9) & kNine);
  k.rule = static_cast<PairRule>((code >> 18) & 1);
  k.src = unpack_side((code >> 19) & 0xFFFFF);
  k.dst = unpack_side((code >> 39) & 0xFFFFF);
  return k;
}

std::string MaxKey::describe() const {
  std::ostringstream os;
  os << "(" << s << "->" << t << " " << to_string(rule) << " src=";
  describe_side(os, src);
  os << " dst=";
  describe_side(os, dst);
  os << ")";
  return os.str();
}

GeoScale::GeoScale(double eps, Hops max_h) : eps_(eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("epsilon must lie in (0,1]");
  long double x = 1.0L;
  for (int i = 0; i < static_cast<int>(kNine); ++i) {
    Hops f = static_cast<Hops>(std::floor(x));
    floor_of_.push_back(f);
    canonical_.push_back(i > 0 && floor_of_[i - 1] == f ? canonical_[i - 1] : i);
    if (f > std::max<Hops>(max_h, 1)) break;
    x *= 1.0L + static_cast<long double>(eps);
  }
}

int GeoScale::exponent_for(Hops h) const {
  if (h < 1) return 0;
  auto it = std::upper_bound(floor_of_.begin(), floor_of_.end(), h);
  int i = static_cast<int>(it - floor_of_.begin()) - 1;
  return canonical_[std::max(i, 0)];
}

Hops GeoScale::prefix(int i) const {
  if (i < static_cast<int>(floor_of_.size())) return floor_of_[i];
  return floor_of_.back();
}

Hops pow2_floor(Hops h) {
  if (h <= 1) return 1;
  Hops p = 1;
  while (p <= h / 2) p *= 2;
  return p;
}

SideCond side_condition(Phase phase, SideCase side_case, const SideProfile& p, const GeoScale& geo,
                        Vertex clean) {
  SideCond c;
  if (phase == Phase::kClean) {
    c.variant = Variant::kClean;
    c.clean = clean;
    return c;
  }
  if (side_case == SideCase::kPrimary) {
    c.variant = Variant::kPrimaryIntact;
    if (phase == Phase::kFresh) {
      c.dist = pow2_floor(p.hp);
    } else if (phase == Phase::kDClose) {
      c.dist = std::max<Hops>(1, p.hp);
    } else {
      throw std::logic_error("phase not defined on the primary ladder");
    }
    return c;
  }
  switch (phase) {
    case Phase::kFresh:
      c.variant = Variant::kBothIntact;
      c.dist = pow2_floor(std::min(p.hp, p.hs));
      break;
    case Phase::kCloseE1:
      c.variant = Variant::kBothIntact;
      c.dist = std::max<Hops>(1, p.hp);
      break;
    case Phase::kTrapezoid:
      c.variant = Variant::kGeometric;
      c.geo = geo.exponent_for(p.hp);
      c.dist = pow2_floor(p.hs);
      break;
    case Phase::kDCloseSec:
      c.variant = Variant::kGeometric;
      c.geo = geo.exponent_for(p.hp);
      c.dist = std::max<Hops>(1, p.hs);
      break;
    default: throw std::logic_error("phase not defined on the secondary ladder");
  }
  return c;
}

Hops exact_budget(Phase phase, const SideProfile& p) {
  switch (phase) {
    case Phase::kDClose:
    case Phase::kCloseE1: return std::max<Hops>(1, p.hp);
    case Phase::kDCloseSec: return std::max<Hops>(1, p.hs);
    default: return 0;
  }
}

PairProfile profile_of(const PathIndex& idx, Vertex s, Vertex t, const OrientedFaults& o) {
  PairProfile pr;
  if (o.tag == CaseTag::kPrimaryPlusSecondary) {
    pr.src.hp = idx.spt(s).dist_h[o.a];
    pr.src.hs = idx.fault_tree(s, o.e1)->dist_h[o.c];
    pr.dst.hp = idx.spt(t).dist_h[o.b];
    pr.dst.hs = idx.fault_tree(t, o.e1)->dist_h[o.d];
  } else if (o.tag == CaseTag::kBothPrimary) {
    pr.src.hp = idx.spt(s).dist_h[o.a];
    pr.dst.hp = idx.spt(t).dist_h[o.d];
  }
  return pr;
}

OrientedFaults orient_pair(const PathIndex& idx, Vertex s, Vertex t, EdgeId first, EdgeId second, PairRule rule) {
  (void)t;
  OrientedFaults o;
  const Graph& g = idx.graph();
  const ShortestPathTree& ts = idx.spt(s);
  if (rule == PairRule::kPrimarySecondary) {
    o.tag = CaseTag::kPrimaryPlusSecondary;
    o.e1 = first;
    o.e2 = second;
    o.b = ts.child_of(first, g.edge(first));
    o.a = g.edge(first).other(o.b);
    const ShortestPathTree* sec = idx.fault_tree(s, first);
    o.d = sec->child_of(second, g.edge(second));
    o.c = g.edge(second).other(o.d);
    return o;
  }
  o.tag = CaseTag::kBothPrimary;
  Vertex cx = ts.child_of(first, g.edge(first));
  Vertex cy = ts.child_of(second, g.edge(second));
  if (ts.dist_w[cy] < ts.dist_w[cx]) {
    std::swap(first, second);
    std::swap(cx, cy);
  }
  o.e1 = first;
  o.e2 = second;
  o.b = cx;
  o.a = g.edge(first).other(cx);
  o.d = cy;
  o.c = g.edge(second).other(cy);
  return o;
}

bool eligible_pair(const PathIndex& idx, Vertex s, Vertex t, EdgeId x, EdgeId y, PairRule rule) {
  if (x == y || s == t || idx.dist_w(s, t) == kInf) return false;
  bool on_x = idx.on_path(s, t, x);
  bool on_y = idx.on_path(s, t, y);
  if (rule == PairRule::kBothPrimary) return on_x && on_y;
  if (on_x && !on_y) return idx.edge_on_secondary(s, t, x, y);
  if (on_y && !on_x) return idx.edge_on_secondary(s, t, y, x);
  return false;
}

namespace {

// No endpoint strictly inside the first `budget` hops of the tree path
// toward `end`.
bool prefix_clear(const ShortestPathTree& tr, Vertex end, Hops budget, const FaultEndpoints& fe) {
  const Hops len = tr.dist_h[end];
  const Hops lim = std::min(budget, len);
  for (Vertex v : fe) {
    if (!tr.is_ancestor(v, end)) continue;
    Hops h = tr.dist_h[v];
    if (h >= 1 && h <= lim - 1) return false;
  }
  return true;
}

bool side_holds(const SideCond& c, const ShortestPathTree& primary, const ShortestPathTree* secondary, Vertex end,
                const GeoScale& geo, const FaultEndpoints& fe) {
  switch (c.variant) {
    case Variant::kPrimaryIntact: return prefix_clear(primary, end, c.dist, fe);
    case Variant::kBothIntact:
      return prefix_clear(primary, end, c.dist, fe) &&
             (secondary == nullptr || prefix_clear(*secondary, end, c.dist, fe));
    case Variant::kGeometric:
      return prefix_clear(primary, end, geo.prefix(c.geo), fe) &&
             (secondary == nullptr || prefix_clear(*secondary, end, c.dist, fe));
    case Variant::kClean: return c.clean >= 0 && is_clean(primary, c.clean, fe);
  }
  return false;
}

}  // namespace

bool satisfies(const PathIndex& idx, const GeoScale& geo, const MaxKey& key, const OrientedFaults& o) {
  const FaultEndpoints fe(idx.graph(), o.e1, o.e2);
  const bool ps = key.rule == PairRule::kPrimarySecondary;
  const ShortestPathTree* sec_s = ps ? idx.fault_tree(key.s, o.e1) : nullptr;
  const ShortestPathTree* sec_t = ps ? idx.fault_tree(key.t, o.e1) : nullptr;
  return side_holds(key.src, idx.spt(key.s), sec_s, key.t, geo, fe) &&
         side_holds(key.dst, idx.spt(key.t), sec_t, key.s, geo, fe);
}

bool satisfies(const PathIndex& idx, const GeoScale& geo, const MaxKey& key, EdgeId x, EdgeId y) {
  if (!eligible_pair(idx, key.s, key.t, x, y, key.rule)) return false;
  if (key.rule == PairRule::kPrimarySecondary && !idx.on_path(key.s, key.t, x)) std::swap(x, y);
  return satisfies(idx, geo, key, orient_pair(idx, key.s, key.t, x, y, key.rule));
}

}  // namespace dfo
