#include "dfo/landmarks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace dfo {

LandmarkSets::LandmarkSets(Vertex n, double c, std::uint64_t seed) : n_(n), c_(c), seed_(seed) {
  if (c < 1.0) throw std::invalid_argument("landmark constant c must be >= 1");
  const int top = n <= 1 ? 0 : static_cast<int>(std::ceil(std::log2(static_cast<double>(n))));
  member_.assign(top + 1, std::vector<std::uint8_t>(n, 0));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i <= top; ++i) {
    double p = probability(i);
    for (Vertex v = 0; v < n; ++v) member_[i][v] = (p >= 1.0 || coin(rng) < p) ? 1 : 0;
  }
  refresh_close();
}

double LandmarkSets::probability(int level) const {
  double logn = n_ <= 1 ? 1.0 : std::log2(static_cast<double>(n_));
  return std::min(1.0, c_ * logn / std::ldexp(1.0, level));
}

Vertex LandmarkSets::level_size(int level) const {
  return static_cast<Vertex>(std::count(member_[level].begin(), member_[level].end(), 1));
}

void LandmarkSets::set_level(int level, const std::vector<Vertex>& members) {
  std::fill(member_[level].begin(), member_[level].end(), 0);
  for (Vertex v : members) member_[level][v] = 1;
  refresh_close();
}

void LandmarkSets::refresh_close() {
  max_close_.assign(n_, 0);
  for (int i = 0; i < levels(); ++i) {
    for (Vertex v = 0; v < n_; ++v) {
      if (member_[i][v]) max_close_[v] = std::max(max_close_[v], kCloseFactor << i);
    }
  }
}

LandmarkSets sample_landmarks(Vertex n, double c, std::uint64_t seed) { return LandmarkSets(n, c, seed); }

std::optional<Vertex> landmark_toward_source(const ShortestPathTree& spt, const LandmarkSets& lm, Vertex x,
                                             int level, Hops budget) {
  if (!spt.reachable(x) || level < 0 || level >= lm.levels()) return std::nullopt;
  Vertex v = x;
  for (Hops step = 0; step <= budget; ++step) {
    if (lm.contains(level, v)) return v;
    if (v == spt.source) break;
    v = spt.parent[v];
  }
  return std::nullopt;
}

std::optional<Vertex> landmark_from_source(const ShortestPathTree& spt, const LandmarkSets& lm, Vertex x,
                                           int level, Hops budget) {
  if (!spt.reachable(x) || level < 0 || level >= lm.levels()) return std::nullopt;
  std::vector<Vertex> path = tree_path(spt, x);
  for (std::size_t i = 0; i < path.size() && static_cast<Hops>(i) <= budget; ++i) {
    if (lm.contains(level, path[i])) return path[i];
  }
  return std::nullopt;
}

int level_of(Hops h) {
  if (h <= 1) return 0;
  return std::bit_width(static_cast<std::uint32_t>(h)) - 1;
}

}  // namespace dfo
