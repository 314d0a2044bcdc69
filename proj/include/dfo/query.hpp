#pragma once

#include <array>
#include <deque>
#include <optional>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dfo/registry.hpp"

namespace dfo {

class MissingKey : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LandmarkMiss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Fallback : std::uint8_t {
  kLandmarkMiss = 0,
  kOffSchedule = 1,  // key outside the built schedule, computed on demand
  kRerouteCap = 2,
  kStateCap = 3,
  kHitSetCap = 4,
};
inline constexpr int kFallbackKinds = 5;
const char* to_string(Fallback f);

struct QueryOptions {
  bool strict = false;
  bool trace = false;
  int reroute_cap = 4;
  int state_cap = 256;   // chain states per HitSet
  int hitset_cap = 96;   // endpoints per HitSet
};

struct QueryOutcome {
  Hops distance = kInfHops;
  Weight weight = kInf;
  bool certified = true;
  std::uint64_t probes = 0;
  std::array<std::uint64_t, kFallbackKinds> fallbacks{};
  std::vector<std::string> trace;
};

// A close-vertex lookup at (y, t) returned p and the chain moved to p.
struct TrapezoidEvent {
  Vertex y = kNoVertex;
  Vertex t = kNoVertex;
  Vertex p = kNoVertex;
  OrientedFaults faults;  // relative to (y, t)
  bool satisfied = false;  // F meets the key of the lookup that returned p
};

class QueryObserver {
 public:
  virtual ~QueryObserver() = default;
  // Any value offered to a minimum for the distance s -> t.
  virtual void on_candidate(Vertex /*s*/, Vertex /*t*/, Weight /*w*/) {}
  virtual void on_trapezoid(const TrapezoidEvent& /*ev*/) {}
};

class QueryEngine {
 public:
  QueryEngine(const PathIndex& idx, const LandmarkSets& lm, const GeoScale& geo, const MaximiserRegistry& reg,
              QueryOptions opt = {})
      : idx_(idx), lm_(lm), geo_(geo), reg_(reg), opt_(opt) {}

  const PathIndex& index() const { return idx_; }
  const LandmarkSets& landmarks() const { return lm_; }
  const GeoScale& geo() const { return geo_; }
  const MaximiserRegistry& registry() const { return reg_; }
  const QueryOptions& options() const { return opt_; }

  // One-off query; f is the recursion budget.
  QueryOutcome query(Vertex s, Vertex t, const FaultSet& f, int budget = 2, QueryObserver* obs = nullptr) const;

 private:
  const PathIndex& idx_;
  const LandmarkSets& lm_;
  const GeoScale& geo_;
  const MaximiserRegistry& reg_;
  QueryOptions opt_;
};

// Queries sharing one fault set. Subresults are memoised across queries, so
// per-query probe counts only cover work not already cached.
class QuerySession {
 public:
  QuerySession(const QueryEngine& engine, const FaultSet& faults, QueryObserver* obs = nullptr);

  QueryOutcome query(Vertex s, Vertex t, int budget = 2);

 private:
  struct Memo {
    Weight w;
    bool tainted;
  };
  struct SideState;
  struct ChainState;
  struct HitSet;

  Weight solve(Vertex s, Vertex t, int f, bool& tainted);
  void hitset(Vertex s, Vertex t, const OrientedFaults& o, HitSet& out, bool& tainted);
  void run_flows(std::deque<ChainState> work, HitSet& out, bool& tainted);
  void offer(Vertex s, Vertex t, Weight w);
  void note(Fallback kind, bool& tainted);
  void log(std::string line);

  const QueryEngine& eng_;
  const PathIndex& idx_;
  FaultSet faults_;
  FaultEndpoints fe_;
  QueryObserver* obs_;
  std::unordered_map<std::uint64_t, Memo> memo_;
  std::unordered_map<std::uint64_t, std::optional<MaxEntry>> lookups_;
  QueryOutcome* current_ = nullptr;
};

}  // namespace dfo
