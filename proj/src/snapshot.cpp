#include "dfo/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

namespace dfo {

namespace {

constexpr std::array<char, 8> kMagic = {'D', 'F', 'O', 'S', 'N', 'A', 'P', '\0'};

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void i32(std::int32_t v) { put(static_cast<std::uint32_t>(v), 4); }
  void i64(std::int64_t v) { put(static_cast<std::uint64_t>(v), 8); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void raw(const char* p, std::size_t n) { buf_.append(p, n); }
  std::string& bytes() { return buf_; }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(const std::string& buf, std::size_t end) : buf_(buf), end_(end) {}
  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  std::int32_t i32() { return static_cast<std::int32_t>(static_cast<std::uint32_t>(get(4))); }
  std::int64_t i64() { return static_cast<std::int64_t>(get(8)); }
  double f64() { return std::bit_cast<double>(get(8)); }
  void raw(char* p, std::size_t n) {
    need(n);
    std::memcpy(p, buf_.data() + pos_, n);
    pos_ += n;
  }
  // Guards counts read from the file before allocating for them.
  void expect_room(std::uint64_t count, std::uint64_t unit) {
    if (unit != 0 && count > (end_ - pos_) / unit) throw SnapshotError("snapshot truncated");
  }
  std::size_t pos() const { return pos_; }

 private:
  void need(std::size_t n) {
    if (end_ - pos_ < n) throw SnapshotError("snapshot truncated");
  }
  std::uint64_t get(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  const std::string& buf_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

void write_stats(Writer& w, const RegistryStats& s) {
  for (auto v : s.src_variant) w.u64(v);
  for (auto v : s.dst_variant) w.u64(v);
  for (auto v : s.rule) w.u64(v);
  w.u64(s.group1);
  w.u64(s.one_clean);
  w.u64(s.two_clean);
  w.u64(s.issued_keys);
  w.u64(s.pair_runs);
}

RegistryStats read_stats(Reader& r) {
  RegistryStats s;
  for (auto& v : s.src_variant) v = r.u64();
  for (auto& v : s.dst_variant) v = r.u64();
  for (auto& v : s.rule) v = r.u64();
  s.group1 = r.u64();
  s.one_clean = r.u64();
  s.two_clean = r.u64();
  s.issued_keys = r.u64();
  s.pair_runs = r.u64();
  return s;
}

}  // namespace

void save_snapshot(std::ostream& out, const Oracle& oracle) {
  const PerturbedGraph& pg = oracle.graph();
  const Graph& g = pg.graph;
  const LandmarkSets& lm = oracle.landmarks();
  const MaximiserRegistry& reg = oracle.registry();
  Writer w;
  w.raw(kMagic.data(), kMagic.size());
  w.u32(kSnapshotVersion);
  w.u32(0);

  w.u32(static_cast<std::uint32_t>(g.n()));
  w.u32(static_cast<std::uint32_t>(g.m()));
  for (const Edge& e : g.edges()) {
    w.u32(static_cast<std::uint32_t>(e.u));
    w.u32(static_cast<std::uint32_t>(e.v));
  }

  w.u8(static_cast<std::uint8_t>(pg.scheme));
  w.u64(oracle.config().seed);
  w.u64(pg.seed);
  w.i64(pg.base);
  for (Weight r : pg.perturbation) w.i64(r);

  w.f64(oracle.config().epsilon);
  w.f64(lm.c());
  w.u64(lm.seed());
  w.u32(static_cast<std::uint32_t>(lm.levels()));
  for (int i = 0; i < lm.levels(); ++i) {
    w.u32(static_cast<std::uint32_t>(lm.level_size(i)));
    for (Vertex v = 0; v < lm.n(); ++v) {
      if (lm.contains(i, v)) w.u32(static_cast<std::uint32_t>(v));
    }
  }

  write_stats(w, reg.stats());
  const auto& offsets = reg.offsets();
  w.u64(offsets.size());
  for (auto o : offsets) w.u64(o);
  w.u64(reg.size());
  for (Vertex s = 0; s < reg.n(); ++s) {
    for (Vertex t = 0; t < reg.n(); ++t) {
      auto keys = reg.keys(s, t);
      auto entries = reg.entries(s, t);
      auto parents = reg.parents(s, t);
      for (std::size_t i = 0; i < keys.size(); ++i) {
        w.u64(keys[i]);
        w.i32(entries[i].first);
        w.i32(entries[i].second);
        w.i64(entries[i].length_w);
        w.u64(parents[i]);
      }
    }
  }

  w.u64(fnv1a(w.bytes()));
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  if (!out) throw SnapshotError("failed writing snapshot");
}

void save_snapshot_file(const std::string& path, const Oracle& oracle) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SnapshotError("cannot open " + path + " for writing");
  save_snapshot(f, oracle);
}

std::unique_ptr<Oracle> load_snapshot(std::istream& in, const OracleConfig& overrides) {
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < kMagic.size() + 16) throw SnapshotError("snapshot truncated");
  if (std::memcmp(buf.data(), kMagic.data(), kMagic.size()) != 0) throw SnapshotError("not a snapshot (bad magic)");
  const std::size_t body = buf.size() - 8;
  std::uint64_t stored = 0;
  for (int i = 0; i < 8; ++i) stored |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[body + i])) << (8 * i);
  if (stored != fnv1a(buf.substr(0, body))) throw SnapshotError("snapshot checksum mismatch");

  Reader r(buf, body);
  std::array<char, 8> magic;
  r.raw(magic.data(), magic.size());
  const std::uint32_t version = r.u32();
  if (version != kSnapshotVersion) throw SnapshotError(fmt::format("unsupported snapshot version {}", version));
  r.u32();

  const Vertex n = static_cast<Vertex>(r.u32());
  const std::uint32_t m = r.u32();
  if (n < 0 || n >= kMaxKeyVertices) throw SnapshotError(fmt::format("vertex count {} out of range", n));
  r.expect_room(m, 8);
  Graph g(n);
  try {
    for (std::uint32_t i = 0; i < m; ++i) {
      Vertex u = static_cast<Vertex>(r.u32());
      Vertex v = static_cast<Vertex>(r.u32());
      g.add_edge(u, v);
    }
  } catch (const GraphError& e) {
    throw SnapshotError(std::string("bad edge list: ") + e.what());
  }

  PerturbedGraph pg;
  const std::uint8_t scheme = r.u8();
  if (scheme > 1) throw SnapshotError("unknown perturbation scheme");
  pg.scheme = static_cast<PerturbationScheme>(scheme);
  OracleConfig config = overrides;
  config.seed = r.u64();
  pg.seed = r.u64();
  pg.base = r.i64();
  r.expect_room(m, 8);
  pg.perturbation.resize(m);
  for (auto& x : pg.perturbation) x = r.i64();
  pg.graph = std::move(g);
  config.scheme = pg.scheme;

  const double eps = r.f64();
  const double c = r.f64();
  const std::uint64_t lseed = r.u64();
  if (!(eps > 0 && eps <= 1) || !(c >= 1)) throw SnapshotError("bad landmark or epsilon parameters");
  LandmarkSets lm(n, c, lseed);
  const std::uint32_t levels = r.u32();
  if (static_cast<int>(levels) != lm.levels()) throw SnapshotError("landmark level count does not match n");
  for (std::uint32_t i = 0; i < levels; ++i) {
    const std::uint32_t count = r.u32();
    r.expect_room(count, 4);
    std::vector<Vertex> members(count);
    for (auto& v : members) {
      v = static_cast<Vertex>(r.u32());
      if (v < 0 || v >= n) throw SnapshotError("landmark vertex out of range");
    }
    lm.set_level(static_cast<int>(i), members);
  }

  RegistryStats stats = read_stats(r);
  const std::uint64_t noff = r.u64();
  if (noff != static_cast<std::uint64_t>(n) * n + 1) throw SnapshotError("registry offset table has the wrong size");
  r.expect_room(noff, 8);
  std::vector<std::uint64_t> offsets(noff);
  for (auto& o : offsets) o = r.u64();
  const std::uint64_t records = r.u64();
  r.expect_room(records, 32);
  std::vector<std::uint64_t> keys(records), parents(records);
  std::vector<MaxEntry> entries(records);
  for (std::uint64_t i = 0; i < records; ++i) {
    keys[i] = r.u64();
    entries[i].first = r.i32();
    entries[i].second = r.i32();
    entries[i].length_w = r.i64();
    parents[i] = r.u64();
  }
  if (r.pos() != body) throw SnapshotError("trailing bytes in snapshot");
  for (std::size_t i = 1; i < offsets.size(); ++i) {
    if (offsets[i] < offsets[i - 1]) throw SnapshotError("registry offsets not monotone");
  }

  MaximiserRegistry reg;
  try {
    reg = MaximiserRegistry::assemble(n, std::move(offsets), std::move(keys), std::move(entries), std::move(parents),
                                      stats);
  } catch (const std::invalid_argument& e) {
    throw SnapshotError(e.what());
  }
  config.epsilon = eps;
  config.landmark_c = c;
  return Oracle::assemble(std::move(pg), std::move(lm), eps, std::move(reg), config);
}

std::unique_ptr<Oracle> load_snapshot_file(const std::string& path, const OracleConfig& overrides) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SnapshotError("cannot open " + path);
  return load_snapshot(f, overrides);
}

}  // namespace dfo
