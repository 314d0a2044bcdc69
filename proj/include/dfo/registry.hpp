#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dfo/landmarks.hpp"
#include "dfo/max_key.hpp"

namespace dfo {

class MemoryCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RegistryConfig {
  std::size_t mem_cap_bytes = std::size_t{4} << 30;
  int jobs = 1;
};

struct RegistryStats {
  // Indexed by Variant, counted once per side.
  std::array<std::uint64_t, 4> src_variant{};
  std::array<std::uint64_t, 4> dst_variant{};
  std::array<std::uint64_t, 2> rule{};
  std::uint64_t group1 = 0;
  std::uint64_t one_clean = 0;   // exactly one clean side
  std::uint64_t two_clean = 0;   // clean on both sides
  std::uint64_t issued_keys = 0;  // keys tried, including ones no pair satisfied
  std::uint64_t pair_runs = 0;    // fault-restricted shortest path runs
  double build_seconds = 0;
};

// Maximiser table. Records of one (s,t) are contiguous and sorted by packed
// key, so lookup is a binary search inside that block.
class MaximiserRegistry {
 public:
  MaximiserRegistry() = default;
  MaximiserRegistry(const MaximiserRegistry& o);
  MaximiserRegistry& operator=(const MaximiserRegistry& o);
  MaximiserRegistry(MaximiserRegistry&&) noexcept = default;
  MaximiserRegistry& operator=(MaximiserRegistry&&) noexcept = default;

  Vertex n() const { return n_; }
  std::size_t size() const { return keys_.size(); }
  const RegistryStats& stats() const { return stats_; }

  // Counts one probe.
  std::optional<MaxEntry> lookup(const MaxKey& key) const;
  // Same without touching the counter.
  std::optional<MaxEntry> find(const MaxKey& key) const;
  // Key this clean-side entry was derived from (0 for non-clean keys).
  std::uint64_t parent_of(const MaxKey& key) const;

  std::uint64_t probes() const { return probes_.load(std::memory_order_relaxed); }
  void reset_probes() const { probes_.store(0, std::memory_order_relaxed); }

  std::span<const std::uint64_t> keys(Vertex s, Vertex t) const;
  std::span<const MaxEntry> entries(Vertex s, Vertex t) const;
  std::span<const std::uint64_t> parents(Vertex s, Vertex t) const;

  std::size_t approx_bytes() const;

  // Raw assembly, used by the builder and the snapshot reader.
  static MaximiserRegistry assemble(Vertex n, std::vector<std::uint64_t> offsets, std::vector<std::uint64_t> keys,
                                    std::vector<MaxEntry> entries, std::vector<std::uint64_t> parents,
                                    RegistryStats stats);
  const std::vector<std::uint64_t>& offsets() const { return offsets_; }

 private:
  std::ptrdiff_t locate(const MaxKey& key) const;

  Vertex n_ = 0;
  std::vector<std::uint64_t> offsets_;  // n*n + 1
  std::vector<std::uint64_t> keys_;
  std::vector<MaxEntry> entries_;
  std::vector<std::uint64_t> parents_;
  RegistryStats stats_;
  mutable std::atomic<std::uint64_t> probes_{0};
};

// Argmax order: larger length wins, infinity is maximal, equal lengths go to
// the lexicographically smaller (min id, max id) pair.
bool better_entry(const MaxEntry& a, const MaxEntry& b);

// Key would be issued by the builder for this rule and side phases (landmark
// budgets only; clean provenance is tracked by the caller).
bool exact_budget_ok(const LandmarkSets& lm, Vertex s, Vertex t, Phase src, Phase dst, const PairProfile& p);

MaximiserRegistry build_registry(const PathIndex& idx, const LandmarkSets& lm, const GeoScale& geo,
                                 const RegistryConfig& config);

// Argmax for a single key by direct enumeration of the eligible pairs.
std::optional<MaxEntry> compute_entry(const PathIndex& idx, const GeoScale& geo, const MaxKey& key);

}  // namespace dfo
