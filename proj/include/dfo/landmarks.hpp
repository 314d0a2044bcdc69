#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dfo/spt.hpp"

namespace dfo {

class LandmarkSets {
 public:
  LandmarkSets() = default;
  LandmarkSets(Vertex n, double c, std::uint64_t seed);

  int levels() const { return static_cast<int>(member_.size()); }
  double c() const { return c_; }
  std::uint64_t seed() const { return seed_; }
  Vertex n() const { return n_; }

  bool contains(int level, Vertex v) const { return member_[level][v] != 0; }
  Vertex level_size(int level) const;
  double probability(int level) const;

  // Replace one level's membership (tests force empty or hand-picked sets).
  void set_level(int level, const std::vector<Vertex>& members);

  // Largest hop budget a D-close key anchored at v may carry:
  // max over levels l holding v of close_factor * 2^l.
  Hops max_close_dist(Vertex v) const { return max_close_[v]; }

  static constexpr Hops kCloseFactor = 4;

 private:
  void refresh_close();

  Vertex n_ = 0;
  double c_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::vector<std::uint8_t>> member_;
  std::vector<Hops> max_close_;
};

LandmarkSets sample_landmarks(Vertex n, double c, std::uint64_t seed);

// Walks tree ancestors from x toward the source, at most `budget` hops, and
// returns the first member of the level.
std::optional<Vertex> landmark_toward_source(const ShortestPathTree& spt, const LandmarkSets& lm, Vertex x,
                                             int level, Hops budget);

// Walks the tree path from the source toward x and returns the first member
// of the level within `budget` hops of the source.
std::optional<Vertex> landmark_from_source(const ShortestPathTree& spt, const LandmarkSets& lm, Vertex x,
                                           int level, Hops budget);

// floor(log2 h) for h >= 1; 0 for h <= 1.
int level_of(Hops h);

}  // namespace dfo
