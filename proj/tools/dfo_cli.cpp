#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "dfo/generators.hpp"
#include "dfo/snapshot.hpp"
#include "dfo/verifier.hpp"

using namespace dfo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitError = 2;

struct Common {
  std::uint64_t seed = 1;
  double landmark_c = 4.0;
  double epsilon = 0.25;
  bool strict = false;
  std::size_t mem_cap_mib = 4096;
  int jobs = 1;
  std::string out;
};

OracleConfig to_config(const Common& c) {
  OracleConfig cfg;
  cfg.seed = c.seed;
  cfg.landmark_c = c.landmark_c;
  cfg.epsilon = c.epsilon;
  cfg.strict = c.strict;
  cfg.mem_cap_bytes = c.mem_cap_mib << 20;
  cfg.jobs = c.jobs;
  return cfg;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

// Accepts "u,v", "(u,v)", "u-v" or a bare edge id.
EdgeId parse_edge(const Graph& g, const std::string& text) {
  static const std::regex pair_re(R"(^\(?\s*(\d+)\s*[,\- ]\s*(\d+)\s*\)?$)");
  static const std::regex id_re(R"(^\d+$)");
  std::smatch m;
  if (std::regex_match(text, m, pair_re)) {
    const long u = std::stol(m[1]), v = std::stol(m[2]);
    if (u >= g.n() || v >= g.n()) throw std::out_of_range(fmt::format("edge {} has a vertex out of range", text));
    EdgeId e = g.find_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (e == kNoEdge) throw std::out_of_range(fmt::format("no edge {} in the graph", text));
    return e;
  }
  if (std::regex_match(text, id_re)) {
    const long id = std::stol(text);
    if (id >= g.m()) throw std::out_of_range(fmt::format("edge id {} out of range", id));
    return static_cast<EdgeId>(id);
  }
  throw std::invalid_argument("cannot parse edge '" + text + "'");
}

std::string hops_text(Hops h) { return h == kInfHops ? "INF" : std::to_string(h); }

nlohmann::json stats_json(const Oracle& o) {
  const RegistryStats& st = o.registry().stats();
  nlohmann::json src, dst;
  for (int v = 0; v < 4; ++v) {
    src[to_string(static_cast<Variant>(v))] = st.src_variant[v];
    dst[to_string(static_cast<Variant>(v))] = st.dst_variant[v];
  }
  const LandmarkSets& lm = o.landmarks();
  nlohmann::json levels = nlohmann::json::array();
  for (int i = 0; i < lm.levels(); ++i) levels.push_back(lm.level_size(i));
  return {
      {"n", o.graph().n()},
      {"m", o.graph().graph.m()},
      {"seed", o.config().seed},
      {"accepted_seed", o.graph().seed},
      {"landmark_c", lm.c()},
      {"epsilon", o.config().epsilon},
      {"landmark_level_sizes", levels},
      {"entries", o.registry().size()},
      {"registry_bytes", o.registry().approx_bytes()},
      {"entries_by_src_variant", src},
      {"entries_by_dst_variant", dst},
      {"entries_by_rule",
       {{to_string(PairRule::kPrimarySecondary), st.rule[0]}, {to_string(PairRule::kBothPrimary), st.rule[1]}}},
      {"group1", st.group1},
      {"one_clean_side", st.one_clean},
      {"two_clean_sides", st.two_clean},
      {"issued_keys", st.issued_keys},
      {"pair_runs", st.pair_runs},
  };
}

Graph generate(const std::string& kind, Vertex n, double p, Vertex cols, int chords, std::uint64_t seed,
               bool keep_all) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (kind == "gnp") {
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("p must lie in [0,1]");
    return make_gnp(n, p, seed, !keep_all);
  }
  if (kind == "grid") return make_grid(n, cols > 0 ? cols : n);
  if (kind == "cycle") {
    if (n < 3) throw std::invalid_argument("a cycle needs n >= 3");
    return chords > 0 ? make_cycle_with_chords(n, chords, std::max<Vertex>(2, n / 4), seed) : make_cycle(n);
  }
  if (kind == "complete") return make_complete(n);
  if (kind == "path") return make_path(n);
  throw std::invalid_argument("unknown graph kind '" + kind + "'");
}

int run_bench(const Oracle& o, std::uint64_t queries, std::uint64_t seed, bool check, const std::string& out) {
  const Graph& g = o.graph().graph;
  if (g.n() < 2) throw std::invalid_argument("bench needs at least two vertices");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick_v(0, g.n() - 1);
  std::uniform_int_distribution<EdgeId> pick_e(0, std::max<EdgeId>(0, g.m() - 1));
  std::map<std::uint64_t, std::uint64_t> hist;
  std::uint64_t probe_max = 0, probe_total = 0, uncertified = 0, mismatches = 0;
  std::array<std::uint64_t, kFallbackKinds> fallbacks{};
  double seconds = 0;
  for (std::uint64_t i = 0; i < queries; ++i) {
    Vertex s = pick_v(rng), t = pick_v(rng);
    while (t == s) t = pick_v(rng);
    FaultSet f;
    if (g.m() >= 2) {
      EdgeId a = pick_e(rng), b = pick_e(rng);
      while (b == a) b = pick_e(rng);
      f = FaultSet{a, b};
    } else if (g.m() == 1) {
      f = FaultSet{0};
    }
    const auto t0 = std::chrono::steady_clock::now();
    QueryOutcome q = o.query(s, t, f);
    seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ++hist[q.probes];
    probe_max = std::max(probe_max, q.probes);
    probe_total += q.probes;
    uncertified += q.certified ? 0 : 1;
    for (int k = 0; k < kFallbackKinds; ++k) fallbacks[k] += q.fallbacks[k];
    if (check && q.distance != brute_dist(g, s, t, f)) ++mismatches;
  }
  nlohmann::json h = nlohmann::json::object();
  for (auto [probes, count] : hist) h[std::to_string(probes)] = count;
  nlohmann::json fb = nlohmann::json::object();
  for (int k = 0; k < kFallbackKinds; ++k) fb[to_string(static_cast<Fallback>(k))] = fallbacks[k];
  nlohmann::json rep = {
      {"n", g.n()},
      {"m", g.m()},
      {"queries", queries},
      {"seconds", seconds},
      {"mean_query_us", queries == 0 ? 0.0 : 1e6 * seconds / static_cast<double>(queries)},
      {"probe_max", probe_max},
      {"probe_mean", queries == 0 ? 0.0 : static_cast<double>(probe_total) / static_cast<double>(queries)},
      {"probe_histogram", h},
      {"uncertified", uncertified},
      {"fallbacks", fb},
  };
  if (check) rep["mismatches"] = mismatches;
  emit(out, rep.dump(2) + "\n");
  std::cerr << fmt::format("bench: {} queries, probes max {} mean {:.3f}, {:.2f} us/query, uncertified {}{}\n",
                           queries, probe_max, rep["probe_mean"].get<double>(), rep["mean_query_us"].get<double>(),
                           uncertified, check ? fmt::format(", mismatches {}", mismatches) : "");
  return mismatches == 0 ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual fault-tolerant distance oracle for undirected unweighted graphs"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* sub, bool build_knobs) {
    sub->add_option("--seed", c.seed, "Random seed (perturbation, landmarks, generators, benchmarks)");
    if (build_knobs) {
      sub->add_option("--landmark-c", c.landmark_c, "Landmark sampling constant c")->check(CLI::Range(1.0, 1e9));
      sub->add_option("--epsilon", c.epsilon, "Trapezoid parameter epsilon")->check(CLI::Range(1e-9, 1.0));
      sub->add_option("--mem-cap", c.mem_cap_mib, "Registry memory cap in MiB");
      sub->add_option("--jobs", c.jobs, "Build threads")->check(CLI::Range(1, 1024));
    }
    sub->add_flag("--strict", c.strict, "Raise on landmark misses and off-schedule keys instead of falling back");
    sub->add_option("--out", c.out, "Output path (stdout when omitted)");
  };

  auto* gen = app.add_subcommand("generate", "Write a generated graph as an edge list");
  std::string kind = "gnp";
  Vertex gen_n = 16, cols = 0;
  double p = 0.3;
  int chords = 0;
  bool keep_all = false;
  gen->add_option("kind", kind, "gnp | grid | cycle | complete | path")->required();
  gen->add_option("n", gen_n, "Vertex count (rows for grid)")->required();
  gen->add_option("--p", p, "Edge probability for gnp");
  gen->add_option("--cols", cols, "Columns for grid (default: n)");
  gen->add_option("--chords", chords, "Random chords added to a cycle");
  gen->add_flag("--keep-all", keep_all, "Keep every gnp component instead of the largest");
  add_common(gen, false);

  auto* build = app.add_subcommand("build", "Build all indices from an edge list and write a snapshot");
  std::string graph_path;
  build->add_option("graph", graph_path, "Edge-list file")->required();
  add_common(build, true);

  auto* query = app.add_subcommand("query", "Answer one query from a snapshot");
  std::string snap_path;
  Vertex qs = 0, qt = 0;
  std::vector<std::string> edges;
  query->add_option("snapshot", snap_path, "Snapshot file")->required();
  query->add_option("s", qs, "Source")->required();
  query->add_option("t", qt, "Target")->required();
  query->add_option("faults", edges, "Failed edges as u,v or edge ids (at most two)")->expected(0, 2);
  bool json_out = false;
  query->add_flag("--json", json_out, "Print the outcome as JSON");
  add_common(query, false);

  auto* verify = app.add_subcommand("verify", "Exhaustively compare snapshot queries against BFS");
  int max_faults = 2;
  bool no_lemmas = false;
  verify->add_option("snapshot", snap_path, "Snapshot file")->required();
  verify->add_option("--max-faults", max_faults, "Largest fault set size")->check(CLI::Range(0, 2));
  verify->add_flag("--no-lemma-checks", no_lemmas, "Skip the trapezoid and junction checks");
  add_common(verify, false);

  auto* bench = app.add_subcommand("bench", "Random-query benchmark with a probe histogram");
  std::uint64_t bench_queries = 100000;
  bool bench_check = false;
  bench->add_option("snapshot", snap_path, "Snapshot file")->required();
  bench->add_option("--queries", bench_queries, "Number of random queries");
  bench->add_flag("--check", bench_check, "Compare every answer against BFS");
  add_common(bench, false);

  auto* stats = app.add_subcommand("stats", "Print snapshot and registry statistics");
  stats->add_option("snapshot", snap_path, "Snapshot file")->required();
  add_common(stats, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (gen->parsed()) {
      Graph g = generate(kind, gen_n, p, cols, chords, c.seed, keep_all);
      std::ostringstream os;
      write_graph(os, g);
      emit(c.out, os.str());
      return kExitOk;
    }
    if (build->parsed()) {
      if (c.out.empty()) throw std::invalid_argument("build needs --out for the snapshot");
      auto o = Oracle::build(load_graph_file(graph_path), to_config(c));
      save_snapshot_file(c.out, *o);
      nlohmann::json j = stats_json(*o);
      j["build_seconds"] = o->build_info().seconds;
      j["attempts"] = o->build_info().attempts;
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }
    auto o = load_snapshot_file(snap_path, to_config(c));
    if (query->parsed()) {
      const Graph& g = o->graph().graph;
      FaultSet f;
      if (edges.size() == 1) f = FaultSet{parse_edge(g, edges[0])};
      if (edges.size() == 2) f = FaultSet{parse_edge(g, edges[0]), parse_edge(g, edges[1])};
      QueryOutcome q = o->query(qs, qt, f);
      if (json_out) {
        nlohmann::json fb = nlohmann::json::object();
        for (int k = 0; k < kFallbackKinds; ++k) fb[to_string(static_cast<Fallback>(k))] = q.fallbacks[k];
        nlohmann::json j = {{"s", qs}, {"t", qt},           {"distance", nullptr}, {"probes", q.probes},
                            {"certified", q.certified}, {"fallbacks", fb}};
        if (q.distance != kInfHops) j["distance"] = q.distance;
        emit(c.out, j.dump(2) + "\n");
      } else {
        emit(c.out, fmt::format("{}\nprobes {}\ncertified {}\n", hops_text(q.distance), q.probes,
                                q.certified ? "yes" : "no"));
      }
      return kExitOk;
    }
    if (verify->parsed()) {
      VerifyLimits lim;
      lim.max_faults = max_faults;
      lim.lemma_checks = !no_lemmas;
      VerificationReport rep = verify_exhaustive(*o, lim, snap_path);
      emit(c.out, rep.to_json().dump(2) + "\n");
      std::cerr << rep.summary() << "\n";
      return rep.mismatches == 0 ? kExitOk : kExitMismatch;
    }
    if (bench->parsed()) return run_bench(*o, bench_queries, c.seed, bench_check, c.out);
    if (stats->parsed()) {
      emit(c.out, stats_json(*o).dump(2) + "\n");
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
