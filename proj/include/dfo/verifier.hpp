#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dfo/oracle.hpp"

namespace dfo {

// Plain hop BFS on G - F. Shares nothing with the perturbed machinery.
std::vector<Hops> brute_bfs(const Graph& g, Vertex s, const FaultSet& f);
Hops brute_dist(const Graph& g, Vertex s, Vertex t, const FaultSet& f);
// Edges of one hop-shortest s-t path in G - F (empty when t is unreachable).
std::vector<EdgeId> brute_path_edges(const Graph& g, Vertex s, Vertex t, const FaultSet& f);

// Every fault set with at most `max_faults` edges, in lexicographic order.
std::vector<FaultSet> all_fault_sets(const Graph& g, int max_faults);

struct VerifyLimits {
  int max_faults = 2;
  bool soundness = true;      // check every offered candidate against the truth
  bool lemma_checks = true;   // trapezoid and junction checks on close-vertex chains
  bool fresh_sessions = false;  // one session per query instead of per fault set
  std::size_t max_failures = 50;
};

struct Tally {
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::uint64_t skipped = 0;  // events outside the property's hypotheses
};

struct Failure {
  Vertex s = kNoVertex;
  Vertex t = kNoVertex;
  std::vector<EdgeId> faults;
  Hops expected = 0;
  Hops got = 0;
};

struct VerificationReport {
  std::string instance;
  Vertex n = 0;
  EdgeId m = 0;
  std::uint64_t queries = 0;
  std::uint64_t matches = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t certified = 0;
  std::uint64_t uncertified = 0;
  std::uint64_t certified_mismatches = 0;
  std::array<std::uint64_t, kFallbackKinds> fallbacks{};
  std::uint64_t probe_max = 0;
  std::uint64_t probe_total = 0;
  Tally soundness;
  Tally trapezoid;
  Tally junction;
  Tally dominance;
  Tally hit_or_exact;
  std::vector<Failure> failures;

  double probe_mean() const { return queries == 0 ? 0.0 : static_cast<double>(probe_total) / queries; }
  double certified_fraction() const { return queries == 0 ? 1.0 : static_cast<double>(certified) / queries; }
  void merge(const VerificationReport& o, std::size_t max_failures = 50);
  std::string summary() const;
  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& j);
};

// All ordered (s,t) with s != t and all fault sets within limits.
VerificationReport verify_exhaustive(const Oracle& oracle, const VerifyLimits& limits, std::string instance = "");

// Single-fault service against BFS for every (s,t,e).
VerificationReport verify_single_fault(const Oracle& oracle, std::string instance = "");

// For every stored key and every eligible pair satisfying it: dominance
// (entry length >= true length) and the hit-or-exact property (entry pair
// meets the replacement path, or the lengths agree).
VerificationReport verify_registry(const Oracle& oracle, std::string instance = "");

}  // namespace dfo
