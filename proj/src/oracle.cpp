#include "dfo/oracle.hpp"

#include <chrono>

#include <fmt/format.h>

namespace dfo {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t landmark_seed(std::uint64_t seed) { return splitmix(seed ^ 0x4C414E444D41524BULL); }

void Oracle::wire() {
  idx_ = std::make_unique<PathIndex>(pg_, base_, sfi_);
  QueryOptions opt;
  opt.strict = config_.strict;
  engine_ = std::make_unique<QueryEngine>(*idx_, lm_, geo_, reg_, opt);
}

std::unique_ptr<Oracle> Oracle::build(Graph g, const OracleConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  std::unique_ptr<Oracle> o(new Oracle());
  o->config_ = config;
  std::uint64_t seed = config.seed;
  for (int attempt = 0;; ++attempt) {
    try {
      o->pg_ = perturb(g, seed, config.scheme);
      o->base_ = build_all_spts(o->pg_);
      o->sfi_ = build_single_fault(o->pg_, o->base_);
      o->lm_ = sample_landmarks(o->pg_.n(), config.landmark_c, landmark_seed(config.seed));
      o->geo_ = GeoScale(config.epsilon, std::max<Vertex>(1, o->pg_.n()));
      o->wire();
      RegistryConfig rc;
      rc.mem_cap_bytes = config.mem_cap_bytes;
      rc.jobs = config.jobs;
      o->reg_ = build_registry(*o->idx_, o->lm_, o->geo_, rc);
      o->info_.accepted_seed = seed;
      o->info_.attempts = attempt + 1;
      break;
    } catch (const TieDetected&) {
      if (attempt >= config.tie_retries) {
        throw TieDetected(kNoVertex);
      }
      seed = splitmix(seed);
    }
  }
  o->info_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return o;
}

std::unique_ptr<Oracle> Oracle::assemble(PerturbedGraph pg, LandmarkSets lm, double epsilon, MaximiserRegistry reg,
                                         const OracleConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  std::unique_ptr<Oracle> o(new Oracle());
  o->config_ = config;
  o->config_.epsilon = epsilon;
  o->config_.landmark_c = lm.c();
  o->pg_ = std::move(pg);
  o->base_ = build_all_spts(o->pg_);
  o->sfi_ = build_single_fault(o->pg_, o->base_);
  o->lm_ = std::move(lm);
  o->geo_ = GeoScale(epsilon, std::max<Vertex>(1, o->pg_.n()));
  o->reg_ = std::move(reg);
  if (o->reg_.n() != o->pg_.n()) throw std::invalid_argument("registry does not match the graph");
  o->wire();
  o->info_.accepted_seed = o->pg_.seed;
  o->info_.attempts = 1;
  o->info_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return o;
}

}  // namespace dfo
