#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include "dfo/query.hpp"

namespace dfo {

struct OracleConfig {
  std::uint64_t seed = 1;
  double landmark_c = 4.0;
  double epsilon = 0.25;
  bool strict = false;
  std::size_t mem_cap_bytes = std::size_t{4} << 30;
  int jobs = 1;
  int tie_retries = 8;
  PerturbationScheme scheme = PerturbationScheme::kWide;
};

struct BuildInfo {
  std::uint64_t accepted_seed = 0;
  int attempts = 0;
  double seconds = 0;
};

// Everything a query needs, built in dependency order. Not copyable; the
// query engine refers into it.
class Oracle {
 public:
  // Resamples the perturbation on ties, up to config.tie_retries extra times.
  static std::unique_ptr<Oracle> build(Graph g, const OracleConfig& config);
  // Rebuilds the trees for a stored perturbation and adopts a stored registry.
  static std::unique_ptr<Oracle> assemble(PerturbedGraph pg, LandmarkSets lm, double epsilon,
                                          MaximiserRegistry reg, const OracleConfig& config);

  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;

  const OracleConfig& config() const { return config_; }
  const BuildInfo& build_info() const { return info_; }
  const PerturbedGraph& graph() const { return pg_; }
  const BaseTrees& trees() const { return base_; }
  const SingleFaultIndex& single_fault() const { return sfi_; }
  const LandmarkSets& landmarks() const { return lm_; }
  const GeoScale& geo() const { return geo_; }
  const MaximiserRegistry& registry() const { return reg_; }
  const PathIndex& index() const { return *idx_; }
  const QueryEngine& engine() const { return *engine_; }

  QueryOutcome query(Vertex s, Vertex t, const FaultSet& f) const { return engine_->query(s, t, f); }

 private:
  Oracle() = default;
  void wire();

  OracleConfig config_;
  BuildInfo info_;
  PerturbedGraph pg_;
  BaseTrees base_;
  SingleFaultIndex sfi_;
  LandmarkSets lm_;
  GeoScale geo_;
  MaximiserRegistry reg_;
  std::unique_ptr<PathIndex> idx_;
  std::unique_ptr<QueryEngine> engine_;
};

// Landmark seed derived from the perturbation seed so both follow --seed.
std::uint64_t landmark_seed(std::uint64_t seed);

}  // namespace dfo
